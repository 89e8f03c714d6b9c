//! What part of the graph is on screen.
//!
//! A [`ViewState`] is plain data: visible node indices and user settings.
//! Operations live on [`ViewContext`], which pairs a graph with its levels and
//! relevance scores. Expansion and collapse work in steps of a percentage of
//! a node's descendants (or ancestors), picking nodes by one of three
//! policies.

mod persist;
mod render;

use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::graph::{DetailWindow, OntoGraph};

pub use persist::{load_view, save_view, ViewDocument, VIEW_FORMAT, VIEW_VERSION};
pub use render::{export_dot, export_svg, view_layout, RangeRoute, RoutedEdge, ViewLayout};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ViewError {
    #[error("node {0} is not visible")]
    NotVisible(String),
    #[error("no node with index {0}")]
    NoSuchNode(usize),
    #[error("step must be in (0, 100], got {0}")]
    InvalidStep(f64),
    #[error("percentage must be in [0, 100], got {0}")]
    InvalidPercent(f64),
    #[error("zoom must be positive, got {0}")]
    InvalidZoom(f64),
    #[error("view document has version {found}, expected {expected}")]
    VersionMismatch { found: u32, expected: u32 },
    #[error("view document names unknown nodes: {}", .0.join(", "))]
    UnknownNodes(Vec<String>),
    #[error("malformed view document: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Policy {
    Relevance,
    GeneralFirst,
    SpecificFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Descendants,
    Ancestors,
}

/// Which of a node's D (disjointness) and P (properties) markers are open.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Markers {
    pub disjoint: bool,
    pub properties: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ViewDefaults {
    pub step_percent: f64,
    /// `None` picks relevance at Thing and general-first elsewhere.
    pub policy: Option<Policy>,
    pub zoom: f64,
}

impl Default for ViewDefaults {
    fn default() -> Self {
        ViewDefaults {
            step_percent: 25.0,
            policy: None,
            zoom: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ViewState {
    pub visible: BTreeSet<usize>,
    pub step_percent: f64,
    pub policy: Option<Policy>,
    pub zoom: f64,
    pub detail_window: DetailWindow,
    pub position_overrides: BTreeMap<usize, (f64, f64)>,
    pub selection: Option<usize>,
    pub markers: BTreeMap<usize, Markers>,
    /// Last slider value set on each node.
    pub sliders: BTreeMap<usize, f64>,
    /// Scorer behind the relevance policy.
    pub relevance_method: String,
}

impl ViewState {
    /// Only Thing visible.
    pub fn new(g: &OntoGraph) -> Self {
        Self::with_defaults(g, &ViewDefaults::default(), "pagerank")
    }

    pub fn with_defaults(g: &OntoGraph, d: &ViewDefaults, relevance_method: &str) -> Self {
        ViewState {
            visible: BTreeSet::from([g.top()]),
            step_percent: d.step_percent,
            policy: d.policy,
            zoom: d.zoom,
            detail_window: g.window.clone(),
            position_overrides: BTreeMap::new(),
            selection: None,
            markers: BTreeMap::new(),
            sliders: BTreeMap::new(),
            relevance_method: relevance_method.to_string(),
        }
    }

    pub fn is_visible(&self, node: usize) -> bool {
        self.visible.contains(&node)
    }

    pub fn markers(&self, node: usize) -> Markers {
        self.markers.get(&node).copied().unwrap_or_default()
    }
}

/// Nodes shown and hidden by one operation. An empty change means there was
/// nothing to do.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Change {
    pub shown: Vec<usize>,
    pub hidden: Vec<usize>,
    /// Ancestors left visible because other visible nodes hang below them.
    pub kept: Vec<usize>,
}

impl Change {
    pub fn is_noop(&self) -> bool {
        self.shown.is_empty() && self.hidden.is_empty()
    }
}

/// A graph plus what the view operations need to rank its nodes.
#[derive(Debug, Clone, Copy)]
pub struct ViewContext<'a> {
    pub graph: &'a OntoGraph,
    pub levels: &'a [usize],
    pub scores: &'a [f64],
}

/// Nodes revealed or hidden by one step: `max(1, ceil(step% × total))`.
pub fn step_size(step_percent: f64, total: usize) -> usize {
    ((step_percent / 100.0 * total as f64).ceil() as usize).max(1)
}

impl<'a> ViewContext<'a> {
    pub fn new(graph: &'a OntoGraph, levels: &'a [usize], scores: &'a [f64]) -> Self {
        assert_eq!(graph.len(), levels.len());
        assert_eq!(graph.len(), scores.len());
        ViewContext { graph, levels, scores }
    }

    fn check_node(&self, node: usize) -> Result<(), ViewError> {
        if node < self.graph.len() {
            Ok(())
        } else {
            Err(ViewError::NoSuchNode(node))
        }
    }

    fn check_visible(&self, v: &ViewState, node: usize) -> Result<(), ViewError> {
        self.check_node(node)?;
        if v.is_visible(node) {
            Ok(())
        } else {
            Err(ViewError::NotVisible(self.graph.node(node).id.clone()))
        }
    }

    /// The policy used at `node`.
    pub fn policy_at(&self, v: &ViewState, node: usize) -> Policy {
        v.policy.unwrap_or(if node == self.graph.top() {
            Policy::Relevance
        } else {
            Policy::GeneralFirst
        })
    }

    fn related(&self, node: usize, dir: Direction) -> &FixedBitSet {
        match dir {
            Direction::Descendants => self.graph.descendants(node),
            Direction::Ancestors => self.graph.ancestors(node),
        }
    }

    /// The descendants (or ancestors) of `node` in the order the policy
    /// reveals them. Level policies walk away from `node`: for ancestors,
    /// general-first starts with the nearest level.
    pub fn policy_order(&self, node: usize, dir: Direction, policy: Policy) -> Vec<usize> {
        let mut items: Vec<usize> = self.related(node, dir).ones().collect();
        let g = self.graph;
        let by_relevance = |a: &usize, b: &usize| {
            self.scores[*b]
                .total_cmp(&self.scores[*a])
                .then_with(|| g.node(*a).label.cmp(&g.node(*b).label))
                .then_with(|| a.cmp(b))
        };
        let outward_first = matches!(
            (policy, dir),
            (Policy::GeneralFirst, Direction::Descendants) | (Policy::SpecificFirst, Direction::Ancestors)
        );
        match policy {
            Policy::Relevance => items.sort_by(by_relevance),
            _ => items.sort_by(|a, b| {
                let lv = self.levels[*a].cmp(&self.levels[*b]);
                let lv = if outward_first { lv } else { lv.reverse() };
                lv.then_with(|| by_relevance(a, b))
            }),
        }
        items
    }

    /// Reveals one step of hidden descendants (or ancestors) of `node`.
    pub fn expand(&self, v: &mut ViewState, node: usize, dir: Direction) -> Result<Change, ViewError> {
        self.check_visible(v, node)?;
        let order = self.policy_order(node, dir, self.policy_at(v, node));
        let k = step_size(v.step_percent, order.len());
        let shown: Vec<usize> = order.into_iter().filter(|i| !v.is_visible(*i)).take(k).collect();
        v.visible.extend(shown.iter().copied());
        self.debug_check(v);
        Ok(Change {
            shown,
            ..Change::default()
        })
    }

    /// Hides one step of visible descendants (or ancestors) of `node`, last
    /// in policy order first. Thing stays, and an ancestor stays while it has
    /// visible descendants outside the line through `node`.
    pub fn collapse(&self, v: &mut ViewState, node: usize, dir: Direction) -> Result<Change, ViewError> {
        self.check_visible(v, node)?;
        let g = self.graph;
        let order = self.policy_order(node, dir, self.policy_at(v, node));
        let k = step_size(v.step_percent, order.len());
        let batch: Vec<usize> = order
            .into_iter()
            .rev()
            .filter(|&i| v.is_visible(i) && i != g.top())
            .take(k)
            .collect();
        let mut lineage = g.descendants(node).clone();
        lineage.union_with(g.ancestors(node));
        lineage.insert(node);
        let mut outside = FixedBitSet::with_capacity(g.len());
        for &i in &v.visible {
            if !lineage.contains(i) {
                outside.insert(i);
            }
        }
        let mut change = Change::default();
        for i in batch {
            if g.descendants(i).intersection(&outside).next().is_some() {
                change.kept.push(i);
            } else {
                v.visible.remove(&i);
                change.hidden.push(i);
            }
        }
        if v.selection.is_some_and(|s| !v.is_visible(s)) {
            v.selection = None;
        }
        self.debug_check(v);
        Ok(change)
    }

    /// Shows exactly the first `round(percent% × total)` descendants of
    /// `node` in policy order and hides its other descendants.
    pub fn set_slider(&self, v: &mut ViewState, node: usize, percent: f64) -> Result<Change, ViewError> {
        self.check_visible(v, node)?;
        if !(0.0..=100.0).contains(&percent) {
            return Err(ViewError::InvalidPercent(percent));
        }
        let order = self.policy_order(node, Direction::Descendants, self.policy_at(v, node));
        let m = (percent / 100.0 * order.len() as f64).round() as usize;
        let mut change = Change::default();
        for (rank, i) in order.into_iter().enumerate() {
            let want = rank < m;
            match (want, v.is_visible(i)) {
                (true, false) => {
                    v.visible.insert(i);
                    change.shown.push(i);
                }
                (false, true) => {
                    v.visible.remove(&i);
                    change.hidden.push(i);
                }
                _ => {}
            }
        }
        v.sliders.insert(node, percent);
        if v.selection.is_some_and(|s| !v.is_visible(s)) {
            v.selection = None;
        }
        self.debug_check(v);
        Ok(change)
    }

    /// Replaces the visible set (Thing is always added).
    pub fn show_only(&self, v: &mut ViewState, nodes: impl IntoIterator<Item = usize>) -> Result<Change, ViewError> {
        let mut next: BTreeSet<usize> = BTreeSet::from([self.graph.top()]);
        for i in nodes {
            self.check_node(i)?;
            next.insert(i);
        }
        let change = Change {
            shown: next.difference(&v.visible).copied().collect(),
            hidden: v.visible.difference(&next).copied().collect(),
            kept: Vec::new(),
        };
        v.visible = next;
        if v.selection.is_some_and(|s| !v.is_visible(s)) {
            v.selection = None;
        }
        Ok(change)
    }

    pub fn select(&self, v: &mut ViewState, node: Option<usize>) -> Result<(), ViewError> {
        if let Some(n) = node {
            self.check_visible(v, n)?;
        }
        v.selection = node;
        Ok(())
    }

    pub fn set_markers(&self, v: &mut ViewState, node: usize, markers: Markers) -> Result<(), ViewError> {
        self.check_node(node)?;
        if markers == Markers::default() {
            v.markers.remove(&node);
        } else {
            v.markers.insert(node, markers);
        }
        Ok(())
    }

    pub fn move_node(&self, v: &mut ViewState, node: usize, pos: Option<(f64, f64)>) -> Result<(), ViewError> {
        self.check_node(node)?;
        match pos {
            Some(p) => v.position_overrides.insert(node, p),
            None => v.position_overrides.remove(&node),
        };
        Ok(())
    }

    /// (visible, total) descendants of `node`.
    pub fn visible_ratio(&self, v: &ViewState, node: usize) -> (usize, usize) {
        let desc = self.graph.descendants(node);
        let visible = v.visible.iter().filter(|&&i| desc.contains(i)).count();
        (visible, desc.count_ones(..))
    }

    fn debug_check(&self, v: &ViewState) {
        debug_assert!(v.is_visible(self.graph.top()));
        debug_assert!(v.visible.iter().all(|&i| i < self.graph.len()));
    }
}

pub fn set_step(v: &mut ViewState, percent: f64) -> Result<(), ViewError> {
    if !(percent > 0.0 && percent <= 100.0) {
        return Err(ViewError::InvalidStep(percent));
    }
    v.step_percent = percent;
    Ok(())
}

pub fn set_zoom(v: &mut ViewState, zoom: f64) -> Result<(), ViewError> {
    if !(zoom > 0.0 && zoom.is_finite()) {
        return Err(ViewError::InvalidZoom(zoom));
    }
    v.zoom = zoom;
    Ok(())
}

/// Visible isA edges as (child, parent).
pub fn visible_edges(v: &ViewState, g: &OntoGraph) -> Vec<(usize, usize)> {
    v.visible
        .iter()
        .flat_map(|&c| {
            g.node(c)
                .parents
                .iter()
                .filter(|p| v.is_visible(**p))
                .map(move |&p| (c, p))
        })
        .collect()
}

/// Indirect (descendant, ancestor) pairs between visible nodes with only
/// hidden nodes in between and no direct edge, sorted.
pub fn derive_dashed(v: &ViewState, g: &OntoGraph) -> Vec<(usize, usize)> {
    let mut visible = FixedBitSet::with_capacity(g.len());
    for &i in &v.visible {
        visible.insert(i);
    }
    let mut out = Vec::new();
    for &c in &v.visible {
        let mut cand = g.ancestors(c).clone();
        cand.intersect_with(&visible);
        let mut covered = FixedBitSet::with_capacity(g.len());
        for a in cand.ones() {
            covered.union_with(g.ancestors(a));
        }
        let parents = &g.node(c).parents;
        for a in cand.difference(&covered) {
            if !parents.contains(&a) {
                out.push((c, a));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Nodes whose label, annotations or equivalent expressions contain `query`
/// (case-insensitively), by earliest match position, then label.
pub fn search(g: &OntoGraph, query: &str) -> Vec<usize> {
    let q = query.to_lowercase();
    if q.is_empty() {
        return Vec::new();
    }
    let mut hits: Vec<(usize, &str, usize)> = Vec::new();
    for (i, node) in g.nodes.iter().enumerate() {
        let texts = std::iter::once(&node.label)
            .chain(&node.annotations)
            .chain(&node.equivalents);
        if let Some(pos) = texts.filter_map(|t| t.to_lowercase().find(&q)).min() {
            hits.push((pos, &node.label, i));
        }
    }
    hits.sort();
    hits.into_iter().map(|(_, _, i)| i).collect()
}
