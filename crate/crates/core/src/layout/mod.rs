//! Layered drawing of the isA hierarchy.
//!
//! Levels grow to the right: a node's level is one past its deepest parent.
//! Within a level, nodes are ordered by barycenter sweeps to reduce edge
//! crossings, then stacked vertically.

mod levels;
mod order;

use serde::{Deserialize, Serialize};

pub use levels::longest_path_levels;
pub use order::Layered;

use crate::graph::OntoGraph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LayoutError {
    #[error("the isA edges contain a cycle through node {0}")]
    Cycle(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LayoutConfig {
    pub sweeps: usize,
    pub min_gap: f64,
    pub band_gap: f64,
    pub margin: f64,
    pub char_width: f64,
    pub padding: f64,
    pub node_height: f64,
    /// Extra height per listed property when a node's property list is open.
    pub property_line: f64,
}

impl Default for LayoutConfig {
    fn default() -> Self {
        LayoutConfig {
            sweeps: 4,
            min_gap: 12.0,
            band_gap: 60.0,
            margin: 20.0,
            char_width: 7.0,
            padding: 10.0,
            node_height: 24.0,
            property_line: 14.0,
        }
    }
}

impl LayoutConfig {
    /// Box width for a label; grows with its length.
    pub fn label_width(&self, label: &str) -> f64 {
        2.0 * self.padding + self.char_width * label.chars().count() as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x: f64,
    pub y: f64,
    pub width: f64,
    pub height: f64,
}

impl Rect {
    pub fn center_y(&self) -> f64 {
        self.y + self.height / 2.0
    }
}

/// Node boxes, level bands and edge routes for one drawing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Geometry {
    pub nodes: Vec<Rect>,
    /// Horizontal extent of each level.
    pub bands: Vec<(f64, f64)>,
    /// One polyline per input edge, from the parent's right side to the
    /// child's left side through the virtual nodes.
    pub routes: Vec<Vec<(f64, f64)>>,
    pub width: f64,
    pub height: f64,
    pub crossings: u64,
}

/// What to lay out: nodes `0..levels.len()` with their levels, sizes and
/// labels, and (child, parent) edges.
#[derive(Debug, Clone, Default)]
pub struct LayoutInput {
    pub levels: Vec<usize>,
    pub labels: Vec<String>,
    pub sizes: Vec<(f64, f64)>,
    pub edges: Vec<(usize, usize)>,
}

/// Orders and positions the nodes.
pub fn layout(input: &LayoutInput, cfg: &LayoutConfig) -> Geometry {
    let layered = Layered::new(&input.levels, &input.edges, &input.labels);
    let order = layered.order(cfg.sweeps);
    let crossings = layered.crossings(&order);
    let mut geom = assign_coordinates(&layered, &order, &input.sizes, cfg);
    geom.crossings = crossings;
    geom
}

/// Level bands left to right; within a band nodes are stacked in order,
/// each aimed at the mean height of its parents but never closer than
/// `min_gap` to the node above it.
pub fn assign_coordinates(
    layered: &Layered,
    order: &[Vec<usize>],
    sizes: &[(f64, f64)],
    cfg: &LayoutConfig,
) -> Geometry {
    let n = layered.len();
    let size = |v: usize| {
        if layered.is_virtual(v) {
            (0.0, 0.0)
        } else {
            sizes[v]
        }
    };
    let mut bands = Vec::with_capacity(order.len());
    let mut x = cfg.margin;
    for layer in order {
        let w = layer
            .iter()
            .filter(|&&v| !layered.is_virtual(v))
            .map(|&v| size(v).0)
            .fold(cfg.padding * 2.0, f64::max);
        bands.push((x, x + w));
        x += w + cfg.band_gap;
    }
    let width = if order.is_empty() { 2.0 * cfg.margin } else { x - cfg.band_gap + cfg.margin };

    let mut rects = vec![
        Rect {
            x: 0.0,
            y: 0.0,
            width: 0.0,
            height: 0.0
        };
        n
    ];
    let mut height: f64 = 2.0 * cfg.margin;
    for (l, layer) in order.iter().enumerate() {
        let mut bottom = f64::NEG_INFINITY;
        for &v in layer {
            let (w, h) = size(v);
            let desired_center = if layered.up[v].is_empty() {
                f64::NEG_INFINITY
            } else {
                layered.up[v].iter().map(|&p| rects[p].center_y()).sum::<f64>()
                    / layered.up[v].len() as f64
            };
            let floor = if bottom.is_finite() { bottom + cfg.min_gap } else { cfg.margin };
            let y = (desired_center - h / 2.0).max(floor);
            let x = if layered.is_virtual(v) {
                (bands[l].0 + bands[l].1) / 2.0
            } else {
                bands[l].0
            };
            rects[v] = Rect { x, y, width: w, height: h };
            bottom = y + h;
            height = height.max(bottom + cfg.margin);
        }
    }

    let routes = layered
        .chains
        .iter()
        .map(|chain| {
            let parent = &rects[chain[0]];
            let child = &rects[*chain.last().expect("chains have two ends")];
            let mut pts = vec![(parent.x + parent.width, parent.center_y())];
            for &v in &chain[1..chain.len() - 1] {
                pts.push((rects[v].x, rects[v].y));
            }
            pts.push((child.x, child.center_y()));
            pts
        })
        .collect();
    rects.truncate(layered.real);
    Geometry {
        nodes: rects,
        bands,
        routes,
        width,
        height,
        crossings: 0,
    }
}

/// Levels of every node of the graph (Thing at 0).
pub fn assign_levels(g: &OntoGraph) -> Result<Vec<usize>, LayoutError> {
    let parents: Vec<Vec<usize>> = g.nodes.iter().map(|n| n.parents.clone()).collect();
    longest_path_levels(&parents)
}

/// Layout of the whole graph with every node shown.
pub fn layout_graph(g: &OntoGraph, cfg: &LayoutConfig) -> Result<Geometry, LayoutError> {
    let levels = assign_levels(g)?;
    let input = LayoutInput {
        labels: g.nodes.iter().map(|n| n.label.clone()).collect(),
        sizes: g
            .nodes
            .iter()
            .map(|n| (cfg.label_width(&n.label), cfg.node_height))
            .collect(),
        edges: g.isa_edges(),
        levels,
    };
    Ok(layout(&input, cfg))
}
