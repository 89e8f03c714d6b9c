//! JSON payloads. Field names are camelCase; nodes are referenced by their
//! stable ids everywhere. `schema/api.json` describes the same shapes.

use std::collections::{BTreeMap, BTreeSet};

use ontoview_core::engine::{Document, DocumentStats, Timings};
use ontoview_core::graph::{NodeKind, OntoGraph, PropertyDescriptor};
use ontoview_core::layout::LayoutConfig;
use ontoview_core::view::{view_layout, Change, Markers, Policy, ViewLayout, ViewState};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Geometry {
    pub x: f64,
    pub y: f64,
    pub width: f64,
    pub height: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NodeView {
    pub id: String,
    pub kind: NodeKind,
    pub label: String,
    pub equivalents: Vec<String>,
    pub annotations: Vec<String>,
    /// Level among the visible levels, 0 for Thing.
    pub level: usize,
    pub geometry: Geometry,
    pub visible_descendants: usize,
    pub total_descendants: usize,
    pub hidden_parents: usize,
    pub has_disjoint: bool,
    pub has_properties: bool,
    pub markers: Markers,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slider: Option<f64>,
    pub score: f64,
    /// Listed only while the P marker is open.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub properties: Vec<PropertyView>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeKind {
    Isa,
    Dashed,
    Range,
    Subproperty,
    Disjoint,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EdgeView {
    pub kind: EdgeKind,
    /// Child for isA and dashed edges, domain node for range edges.
    pub from: String,
    pub to: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub route: Vec<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub property: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub super_property: Option<String>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub inferred: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ChangeView {
    pub shown: Vec<String>,
    pub hidden: Vec<String>,
    pub kept: Vec<String>,
}

impl ChangeView {
    pub fn new(c: &Change, g: &OntoGraph) -> Self {
        let ids = |v: &[usize]| v.iter().map(|&i| g.node(i).id.clone()).collect();
        ChangeView {
            shown: ids(&c.shown),
            hidden: ids(&c.hidden),
            kept: ids(&c.kept),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WindowView {
    pub upper: String,
    pub lower: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GraphView {
    pub session: String,
    pub document: String,
    pub step_percent: f64,
    pub policy: Option<Policy>,
    pub relevance_method: String,
    pub zoom: f64,
    pub selection: Option<String>,
    pub detail_window: WindowView,
    pub width: f64,
    pub height: f64,
    /// Horizontal extent of each visible level.
    pub bands: Vec<[f64; 2]>,
    pub crossings: u64,
    pub nodes: Vec<NodeView>,
    pub edges: Vec<EdgeView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub change: Option<ChangeView>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PropertyView {
    pub iri: String,
    pub name: String,
    pub data_property: bool,
    pub ranges: Vec<String>,
    pub functional: bool,
    pub transitive: bool,
    pub inverse_of: Vec<String>,
    pub super_properties: Vec<String>,
    pub approximate: bool,
}

impl PropertyView {
    pub fn new(p: &PropertyDescriptor, g: &OntoGraph) -> Self {
        let mut ranges: Vec<String> = p.range_nodes.iter().map(|&i| g.node(i).label.clone()).collect();
        ranges.extend(p.range_datatypes.iter().cloned());
        PropertyView {
            iri: p.iri.as_str().to_string(),
            name: p.iri.local_name().to_string(),
            data_property: p.is_data_property,
            ranges,
            functional: p.functional,
            transitive: p.transitive,
            inverse_of: p.inverse_of.iter().map(|i| i.compact()).collect(),
            super_properties: p.super_properties.iter().map(|i| i.compact()).collect(),
            approximate: p.approximate,
        }
    }
}

/// Everything a tooltip shows about one node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NodeDetail {
    pub id: String,
    pub kind: NodeKind,
    pub label: String,
    /// Functional-syntax form of the representative expression.
    pub expression: String,
    pub equivalents: Vec<String>,
    pub annotations: Vec<String>,
    pub instances: Vec<String>,
    pub parents: Vec<String>,
    pub children: Vec<String>,
    pub disjoint_with: Vec<String>,
    pub properties: Vec<PropertyView>,
    pub visible: bool,
    pub visible_descendants: usize,
    pub total_descendants: usize,
    pub scores: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchHit {
    pub id: String,
    pub label: String,
    pub kind: NodeKind,
    pub visible: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionCreated {
    pub session: String,
    pub document: String,
    pub created_at_ms: u128,
    pub timings: Timings,
    pub stats: DocumentStats,
    pub graph: GraphView,
}

fn geometry(r: &ontoview_core::layout::Rect) -> Geometry {
    Geometry {
        x: r.x,
        y: r.y,
        width: r.width,
        height: r.height,
    }
}

fn route(points: &[(f64, f64)]) -> Vec<[f64; 2]> {
    points.iter().map(|&(x, y)| [x, y]).collect()
}

fn centre(g: &Geometry) -> [f64; 2] {
    [g.x + g.width / 2.0, g.y + g.height / 2.0]
}

impl GraphView {
    /// The visible graph of `v` over `doc`, laid out with `cfg`.
    pub fn build(session: &str, document: &str, doc: &Document, v: &ViewState, cfg: &LayoutConfig) -> Self {
        let ctx = doc.context(v);
        let lay = view_layout(&ctx, v, cfg);
        Self::from_layout(session, document, doc, v, &lay)
    }

    pub fn from_layout(session: &str, document: &str, doc: &Document, v: &ViewState, lay: &ViewLayout) -> Self {
        let g = &doc.graph;
        let ctx = doc.context(v);
        let id = |i: usize| g.node(i).id.clone();
        let mut nodes = Vec::with_capacity(lay.nodes.len());
        let mut geo: BTreeMap<usize, Geometry> = BTreeMap::new();
        for (slot, &i) in lay.nodes.iter().enumerate() {
            let n = g.node(i);
            let (shown, total) = ctx.visible_ratio(v, i);
            let markers = v.markers(i);
            let geometry = geometry(&lay.rects[slot]);
            geo.insert(i, geometry.clone());
            nodes.push(NodeView {
                id: n.id.clone(),
                kind: n.kind,
                label: n.label.clone(),
                equivalents: n.equivalents.clone(),
                annotations: n.annotations.clone(),
                level: lay.levels[slot],
                geometry,
                visible_descendants: shown,
                total_descendants: total,
                hidden_parents: n.parents.iter().filter(|&&p| !v.is_visible(p)).count(),
                has_disjoint: !n.disjoint_with.is_empty(),
                has_properties: !n.domain_of.is_empty(),
                markers,
                slider: v.sliders.get(&i).copied(),
                score: ctx.scores.get(i).copied().unwrap_or(0.0),
                properties: if markers.properties {
                    n.domain_of.iter().map(|p| PropertyView::new(p, g)).collect()
                } else {
                    Vec::new()
                },
            });
        }

        let mut edges = Vec::new();
        let plain = |kind, from: String, to: String, route| EdgeView {
            kind,
            from,
            to,
            route,
            property: None,
            super_property: None,
            inferred: false,
        };
        for e in &lay.isa {
            edges.push(plain(EdgeKind::Isa, id(e.child), id(e.parent), route(&e.route)));
        }
        for e in &lay.dashed {
            edges.push(plain(EdgeKind::Dashed, id(e.child), id(e.parent), route(&e.route)));
        }
        for r in &lay.ranges {
            edges.push(EdgeView {
                property: Some(r.property.as_str().to_string()),
                ..plain(EdgeKind::Range, id(r.from), id(r.to), route(&r.route))
            });
        }
        // sub-property links join nodes whose open property lists show both ends
        let mut listed: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
        for &i in &lay.nodes {
            if v.markers(i).properties {
                for p in &g.node(i).domain_of {
                    listed.entry(p.iri.as_str()).or_default().push(i);
                }
            }
        }
        for (sub, sup) in &g.sub_property_edges {
            let (Some(a), Some(b)) = (listed.get(sub.as_str()), listed.get(sup.as_str())) else {
                continue;
            };
            for &x in a {
                for &y in b {
                    edges.push(EdgeView {
                        property: Some(sub.as_str().to_string()),
                        super_property: Some(sup.as_str().to_string()),
                        ..plain(EdgeKind::Subproperty, id(x), id(y), Vec::new())
                    });
                }
            }
        }
        let mut seen = BTreeSet::new();
        for d in &g.disjoint_pairs {
            let open = v.markers(d.a).disjoint || v.markers(d.b).disjoint;
            if !open || !v.is_visible(d.a) || !v.is_visible(d.b) || !seen.insert((d.a, d.b)) {
                continue;
            }
            edges.push(EdgeView {
                inferred: d.inferred,
                ..plain(EdgeKind::Disjoint, id(d.a), id(d.b), vec![centre(&geo[&d.a]), centre(&geo[&d.b])])
            });
        }

        GraphView {
            session: session.to_string(),
            document: document.to_string(),
            step_percent: v.step_percent,
            policy: v.policy,
            relevance_method: v.relevance_method.clone(),
            zoom: v.zoom,
            selection: v.selection.map(id),
            detail_window: WindowView {
                upper: v.detail_window.upper.to_functional(),
                lower: v.detail_window.lower.to_functional(),
            },
            width: lay.width,
            height: lay.height,
            bands: lay.bands.iter().map(|&(a, b)| [a, b]).collect(),
            crossings: lay.crossings,
            nodes,
            edges,
            change: None,
        }
    }
}

impl NodeDetail {
    pub fn new(doc: &Document, v: &ViewState, i: usize) -> Self {
        let g = &doc.graph;
        let n = g.node(i);
        let ids = |xs: &[usize]| xs.iter().map(|&j| g.node(j).id.clone()).collect();
        let (shown, total) = doc.context(v).visible_ratio(v, i);
        NodeDetail {
            id: n.id.clone(),
            kind: n.kind,
            label: n.label.clone(),
            expression: n.expression.to_functional(),
            equivalents: n.equivalents.clone(),
            annotations: n.annotations.clone(),
            instances: n.instances.iter().map(|x| x.compact()).collect(),
            parents: ids(&n.parents),
            children: ids(&n.children),
            disjoint_with: ids(&n.disjoint_with),
            properties: n.domain_of.iter().map(|p| PropertyView::new(p, g)).collect(),
            visible: v.is_visible(i),
            visible_descendants: shown,
            total_descendants: total,
            scores: doc
                .scores
                .iter()
                .map(|(m, s)| (m.clone(), s.get(i).copied().unwrap_or(0.0)))
                .collect(),
        }
    }
}
