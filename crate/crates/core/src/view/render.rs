use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{derive_dashed, visible_edges, ViewContext, ViewState};
use crate::graph::{NodeKind, OntoGraph, PropertyDescriptor};
use crate::iri::Iri;
use crate::layout::{layout, LayoutConfig, LayoutInput, Rect};

const ISA: &str = "#3366cc";
const SELECTED: &str = "#ff8c00";
const RANGE: &str = "#87cefa";
const SUB_PROPERTY: &str = "#e377c2";
const DISJOINT: &str = "#d62728";
const PRIMITIVE_FILL: &str = "#e0e0e0";
const EQUIV_FILL: &str = "#b8e6b8";
const GUIDE: &str = "#e8e8e8";
const RATIO_BG: &str = "#cccccc";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoutedEdge {
    pub child: usize,
    pub parent: usize,
    pub route: Vec<(f64, f64)>,
}

/// Orthogonal route of an object-property range edge: out of the domain
/// node at the property's line, along a vertical lane, into a port on the
/// right side of the range node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RangeRoute {
    pub property: Iri,
    pub from: usize,
    pub to: usize,
    pub route: Vec<(f64, f64)>,
}

/// Geometry of the visible part of the graph. Node indices are graph
/// indices; `rects[i]` belongs to `nodes[i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViewLayout {
    pub nodes: Vec<usize>,
    pub rects: Vec<Rect>,
    /// Level of each visible node, counting only levels with visible nodes.
    pub levels: Vec<usize>,
    pub bands: Vec<(f64, f64)>,
    pub isa: Vec<RoutedEdge>,
    pub dashed: Vec<RoutedEdge>,
    /// Range edges of nodes whose property list is open.
    pub ranges: Vec<RangeRoute>,
    pub width: f64,
    pub height: f64,
    pub crossings: u64,
    #[serde(skip)]
    slot: BTreeMap<usize, usize>,
    #[serde(skip)]
    property_top: Vec<f64>,
    #[serde(skip)]
    line: f64,
}

impl ViewLayout {
    pub fn rect_of(&self, node: usize) -> Option<&Rect> {
        self.slot.get(&node).map(|&s| &self.rects[s])
    }
}

fn property_line(p: &PropertyDescriptor, g: &OntoGraph) -> String {
    let mut ranges: Vec<String> = p.range_nodes.iter().map(|&i| g.node(i).label.clone()).collect();
    ranges.extend(p.range_datatypes.iter().cloned());
    let mut s = p.iri.local_name().to_string();
    if !ranges.is_empty() {
        s.push_str(": ");
        s.push_str(&ranges.join(", "));
    }
    if p.functional {
        s.push_str(" (F)");
    }
    if p.transitive {
        s.push_str(" (T)");
    }
    s
}

fn equivalence_lines(g: &OntoGraph, i: usize) -> &[String] {
    let node = g.node(i);
    if node.kind == NodeKind::Defined {
        &node.equivalents
    } else {
        &[]
    }
}

fn shown_properties<'g>(g: &'g OntoGraph, v: &ViewState, i: usize) -> &'g [PropertyDescriptor] {
    if v.markers(i).properties {
        &g.node(i).domain_of
    } else {
        &[]
    }
}

/// Lays out the visible nodes, drawing isA edges and dashed indirect edges.
/// Dragged positions override the computed ones.
pub fn view_layout(ctx: &ViewContext, v: &ViewState, cfg: &LayoutConfig) -> ViewLayout {
    let g = ctx.graph;
    let nodes: Vec<usize> = v.visible.iter().copied().collect();
    let slot: BTreeMap<usize, usize> = nodes.iter().enumerate().map(|(s, &i)| (i, s)).collect();

    let mut distinct: Vec<usize> = nodes.iter().map(|&i| ctx.levels[i]).collect();
    distinct.sort_unstable();
    distinct.dedup();
    let levels: Vec<usize> = nodes
        .iter()
        .map(|&i| distinct.binary_search(&ctx.levels[i]).expect("level present"))
        .collect();

    let sizes: Vec<(f64, f64)> = nodes
        .iter()
        .map(|&i| {
            let node = g.node(i);
            let equivs = equivalence_lines(g, i);
            let props: Vec<String> = shown_properties(g, v, i).iter().map(|p| property_line(p, g)).collect();
            let width = std::iter::once(&node.label)
                .chain(equivs)
                .chain(&props)
                .map(|s| cfg.label_width(s))
                .fold(0.0, f64::max);
            let lines = (equivs.len() + props.len()) as f64;
            (width, cfg.node_height + lines * cfg.property_line)
        })
        .collect();

    let isa = visible_edges(v, g);
    let dashed = derive_dashed(v, g);
    let edges: Vec<(usize, usize)> = isa
        .iter()
        .chain(&dashed)
        .map(|(c, p)| (slot[c], slot[p]))
        .collect();
    let input = LayoutInput {
        levels: levels.clone(),
        labels: nodes.iter().map(|&i| g.node(i).label.clone()).collect(),
        sizes,
        edges,
    };
    let geom = layout(&input, cfg);
    let mut rects = geom.nodes;
    let mut width = geom.width;
    let mut height = geom.height;
    for (s, &i) in nodes.iter().enumerate() {
        if let Some(&(x, y)) = v.position_overrides.get(&i) {
            rects[s].x = x;
            rects[s].y = y;
            width = width.max(x + rects[s].width + cfg.margin);
            height = height.max(y + rects[s].height + cfg.margin);
        }
    }
    let mut routes = geom.routes;
    for (route, &(c, p)) in routes.iter_mut().zip(&input.edges) {
        let (pr, cr) = (rects[p], rects[c]);
        let last = route.len() - 1;
        route[0] = (pr.x + pr.width, pr.center_y());
        route[last] = (cr.x, cr.center_y());
    }
    let routed: Vec<RoutedEdge> = isa
        .iter()
        .chain(&dashed)
        .zip(routes)
        .map(|(&(child, parent), route)| RoutedEdge { child, parent, route })
        .collect();
    let (isa_routes, dashed_routes) = routed.split_at(isa.len());
    let property_top: Vec<f64> = nodes
        .iter()
        .zip(&rects)
        .map(|(&i, r)| r.y + cfg.node_height + equivalence_lines(g, i).len() as f64 * cfg.property_line)
        .collect();
    let ranges = route_ranges(g, v, &slot, &rects, &property_top, cfg);
    for r in &ranges {
        width = width.max(r.route[1].0 + cfg.margin);
    }
    ViewLayout {
        nodes,
        rects,
        levels,
        bands: geom.bands,
        isa: isa_routes.to_vec(),
        dashed: dashed_routes.to_vec(),
        ranges,
        width,
        height,
        crossings: geom.crossings,
        slot,
        property_top,
        line: cfg.property_line,
    }
}

/// Ports are spread over the right side of each range node, ordered by the
/// height of the incoming source so edges into one node do not cross. Lanes
/// are taken greedily, shortest edge first, nudging right until the vertical
/// segment overlaps no earlier one.
fn route_ranges(
    g: &OntoGraph,
    v: &ViewState,
    slot: &BTreeMap<usize, usize>,
    rects: &[Rect],
    property_top: &[f64],
    cfg: &LayoutConfig,
) -> Vec<RangeRoute> {
    const LANE: f64 = 8.0;
    // (edge, source port)
    let mut edges: Vec<(&crate::graph::RangeEdge, (f64, f64))> = Vec::new();
    for r in &g.range_edges {
        if !v.markers(r.from).properties {
            continue;
        }
        let (Some(&sf), Some(_)) = (slot.get(&r.from), slot.get(&r.to)) else {
            continue;
        };
        let Some(k) = g.node(r.from).domain_of.iter().position(|p| p.iri == r.property) else {
            continue;
        };
        let src = rects[sf];
        edges.push((r, (src.x + src.width, property_top[sf] + (k as f64 + 0.5) * cfg.property_line)));
    }

    let mut incoming: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (e, (r, _)) in edges.iter().enumerate() {
        incoming.entry(r.to).or_default().push(e);
    }
    let mut target_port = vec![(0.0, 0.0); edges.len()];
    for (to, mut list) in incoming {
        list.sort_by(|&a, &b| edges[a].1 .1.total_cmp(&edges[b].1 .1).then(a.cmp(&b)));
        let t = rects[slot[&to]];
        let m = list.len() as f64;
        for (j, e) in list.into_iter().enumerate() {
            target_port[e] = (t.x + t.width, t.y + (j as f64 + 1.0) * t.height / (m + 1.0));
        }
    }

    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by(|&a, &b| {
        let span = |e: usize| (edges[e].1 .1 - target_port[e].1).abs();
        span(a).total_cmp(&span(b)).then(a.cmp(&b))
    });
    let mut placed: Vec<(f64, f64, f64)> = Vec::new();
    let mut routes: Vec<Option<RangeRoute>> = vec![None; edges.len()];
    for e in order {
        let (r, (sx, sy)) = edges[e];
        let (tx, ty) = target_port[e];
        let (lo, hi) = (sy.min(ty), sy.max(ty));
        let mut x = sx.max(tx) + cfg.padding;
        while placed
            .iter()
            .any(|&(px, plo, phi)| (px - x).abs() < LANE / 2.0 && plo <= hi + 1.0 && lo <= phi + 1.0)
        {
            x += LANE;
        }
        placed.push((x, lo, hi));
        routes[e] = Some(RangeRoute {
            property: r.property.clone(),
            from: r.from,
            to: r.to,
            route: vec![(sx, sy), (x, sy), (x, ty), (tx, ty)],
        });
    }
    routes.into_iter().flatten().collect()
}

fn num(x: f64) -> String {
    let s = format!("{x:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

fn path(points: &[(f64, f64)]) -> String {
    let mut d = String::new();
    for (k, (x, y)) in points.iter().enumerate() {
        let _ = write!(d, "{}{} {}", if k == 0 { "M" } else { " L" }, num(*x), num(*y));
    }
    d
}

fn centre(r: &Rect) -> (f64, f64) {
    (r.x + r.width / 2.0, r.center_y())
}

/// SVG snapshot of the view. Identical inputs give identical bytes.
pub fn export_svg(ctx: &ViewContext, v: &ViewState, lay: &ViewLayout) -> String {
    let g = ctx.graph;
    let mut s = String::new();
    let (w, h) = (lay.width * v.zoom, lay.height * v.zoom);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(w),
        num(h),
        num(lay.width),
        num(lay.height)
    );
    s.push_str("<rect class=\"background\" x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n");

    s.push_str("<g class=\"levels\">\n");
    for (x0, _) in &lay.bands {
        let _ = writeln!(
            s,
            r#"<line class="level-guide" x1="{x}" y1="0" x2="{x}" y2="{}" stroke="{GUIDE}"/>"#,
            num(lay.height),
            x = num(x0 - 4.0),
        );
    }
    s.push_str("</g>\n<g class=\"edges\">\n");
    for e in &lay.isa {
        let selected = v.selection.is_some_and(|sel| sel == e.child || sel == e.parent);
        let _ = writeln!(
            s,
            r#"<path class="isa" d="{}" fill="none" stroke="{}" stroke-width="1.5"/>"#,
            path(&e.route),
            if selected { SELECTED } else { ISA }
        );
    }
    for e in &lay.dashed {
        let selected = v.selection.is_some_and(|sel| sel == e.child || sel == e.parent);
        let _ = writeln!(
            s,
            r#"<path class="dashed" d="{}" fill="none" stroke="{}" stroke-width="1.5" stroke-dasharray="6 4"/>"#,
            path(&e.route),
            if selected { SELECTED } else { ISA }
        );
    }
    for r in &lay.ranges {
        let _ = writeln!(
            s,
            r#"<path class="range" d="{}" fill="none" stroke="{RANGE}" stroke-width="1.2"><title>{}</title></path>"#,
            path(&r.route),
            escape(r.property.local_name())
        );
    }
    let mut rows: BTreeMap<&str, Vec<(f64, f64)>> = BTreeMap::new();
    for (s_idx, &i) in lay.nodes.iter().enumerate() {
        let r = &lay.rects[s_idx];
        for (k, p) in shown_properties(g, v, i).iter().enumerate() {
            let y = lay.property_top[s_idx] + (k as f64 + 0.5) * lay.line;
            rows.entry(p.iri.as_str()).or_default().push((r.x + r.width, y));
        }
    }
    for (sub, sup) in &g.sub_property_edges {
        let (Some(a), Some(b)) = (rows.get(sub.as_str()), rows.get(sup.as_str())) else {
            continue;
        };
        for &pa in a {
            for &pb in b {
                let _ = writeln!(
                    s,
                    r#"<path class="sub-property" d="{}" fill="none" stroke="{SUB_PROPERTY}"/>"#,
                    path(&[pa, pb])
                );
            }
        }
    }
    let mut drawn = std::collections::BTreeSet::new();
    for d in &g.disjoint_pairs {
        if !(v.markers(d.a).disjoint || v.markers(d.b).disjoint) || !drawn.insert((d.a, d.b)) {
            continue;
        }
        if let (Some(a), Some(b)) = (lay.rect_of(d.a), lay.rect_of(d.b)) {
            let ((x1, y1), (x2, y2)) = (centre(a), centre(b));
            for off in [-1.5, 1.5] {
                let _ = writeln!(
                    s,
                    r#"<line class="disjoint" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{DISJOINT}"/>"#,
                    num(x1 + off),
                    num(y1 + off),
                    num(x2 + off),
                    num(y2 + off)
                );
            }
        }
    }
    s.push_str("</g>\n<g class=\"nodes\">\n");
    for (s_idx, &i) in lay.nodes.iter().enumerate() {
        let node = g.node(i);
        let r = &lay.rects[s_idx];
        let kind = match node.kind {
            NodeKind::Primitive => "primitive",
            NodeKind::Defined => "defined",
            NodeKind::Anonymous => "anonymous",
        };
        let (shown, total) = ctx.visible_ratio(v, i);
        let _ = writeln!(s, r#"<g class="node node-{kind}" id="{}">"#, node.id);
        let _ = writeln!(s, "<title>{} ({shown}/{total})</title>", escape(&node.label));
        let (fill, stroke, dash) = match node.kind {
            NodeKind::Anonymous => ("#ffffff", "#808080", r#" stroke-dasharray="3 2""#),
            _ => (PRIMITIVE_FILL, "#808080", ""),
        };
        let stroke = if v.selection == Some(i) { SELECTED } else { stroke };
        let _ = writeln!(
            s,
            r#"<rect class="node-box" x="{}" y="{}" width="{}" height="{}" fill="{fill}" stroke="{stroke}"{dash}/>"#,
            num(r.x),
            num(r.y),
            num(r.width),
            num(r.height)
        );
        let equivs = equivalence_lines(g, i);
        if !equivs.is_empty() {
            let top = lay.property_top[s_idx] - equivs.len() as f64 * lay.line;
            let _ = writeln!(
                s,
                r#"<rect class="equiv-band" x="{}" y="{}" width="{}" height="{}" fill="{EQUIV_FILL}"/>"#,
                num(r.x),
                num(top),
                num(r.width),
                num(equivs.len() as f64 * lay.line)
            );
            for (k, e) in equivs.iter().enumerate() {
                let _ = writeln!(
                    s,
                    r#"<text class="equiv" x="{}" y="{}" font-size="10">{}</text>"#,
                    num(r.x + 4.0),
                    num(top + (k as f64 + 0.75) * lay.line),
                    escape(e)
                );
            }
        }
        let ratio = if total == 0 { 0.0 } else { shown as f64 / total as f64 };
        let _ = writeln!(
            s,
            r#"<rect class="ratio-bg" x="{}" y="{}" width="{}" height="3" fill="{RATIO_BG}"/>"#,
            num(r.x),
            num(r.y - 4.0),
            num(r.width)
        );
        let _ = writeln!(
            s,
            r#"<rect class="ratio-bar" x="{}" y="{}" width="{}" height="3" fill="{ISA}"/>"#,
            num(r.x),
            num(r.y - 4.0),
            num(r.width * ratio)
        );
        let style = if node.kind == NodeKind::Anonymous { r#" font-style="italic""# } else { "" };
        let _ = writeln!(
            s,
            r#"<text class="label" x="{}" y="{}" font-family="sans-serif" font-size="12"{style}>{}</text>"#,
            num(r.x + 10.0),
            num(r.y + 16.0),
            escape(&node.label)
        );
        let mut marks = String::new();
        if !node.disjoint_with.is_empty() {
            marks.push('D');
        }
        if !node.domain_of.is_empty() {
            marks.push('P');
        }
        if !marks.is_empty() {
            let _ = writeln!(
                s,
                r#"<text class="markers" x="{}" y="{}" font-size="9">{marks}</text>"#,
                num(r.x + r.width - 4.0 - 6.0 * marks.len() as f64),
                num(r.y + 10.0)
            );
        }
        for (k, p) in shown_properties(g, v, i).iter().enumerate() {
            let _ = writeln!(
                s,
                r#"<text class="property" x="{}" y="{}" font-size="10">{}</text>"#,
                num(r.x + 4.0),
                num(lay.property_top[s_idx] + (k as f64 + 0.75) * lay.line),
                escape(&property_line(p, g))
            );
        }
        s.push_str("</g>\n");
    }
    s.push_str("</g>\n</svg>\n");
    s
}

/// Graphviz rendering of the visible nodes, isA edges (child to parent)
/// and dashed indirect edges.
pub fn export_dot(v: &ViewState, g: &OntoGraph) -> String {
    let mut s = String::from("digraph ontoview {\n  rankdir=RL;\n  node [shape=box];\n");
    for &i in &v.visible {
        let node = g.node(i);
        let style = match node.kind {
            NodeKind::Primitive => "filled",
            NodeKind::Defined => "filled,bold",
            NodeKind::Anonymous => "dashed",
        };
        let _ = writeln!(
            s,
            "  \"{}\" [label=\"{}\", style=\"{style}\"];",
            node.id,
            node.label.replace('\\', "\\\\").replace('"', "\\\"")
        );
    }
    for (c, p) in visible_edges(v, g) {
        let _ = writeln!(s, "  \"{}\" -> \"{}\";", g.node(c).id, g.node(p).id);
    }
    for (c, p) in derive_dashed(v, g) {
        let _ = writeln!(s, "  \"{}\" -> \"{}\" [style=dashed];", g.node(c).id, g.node(p).id);
    }
    s.push_str("}\n");
    s
}
