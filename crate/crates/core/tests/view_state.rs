mod common;

use std::collections::BTreeSet;

use common::{atom, fixture, random_ontology, rng, GenConfig};
use ontoview_core::engine::{Document, EngineConfig};
use ontoview_core::graph::{NodeKind, OntoGraph};
use ontoview_core::ontology::Axiom;
use ontoview_core::view::{
    derive_dashed, export_svg, load_view, save_view, search, set_step, step_size, view_layout, Direction,
    Markers, Policy, ViewContext, ViewError, ViewState, VIEW_VERSION,
};
use ontoview_core::{ClassExpression as CE, Iri, Ontology};
use rand::Rng;

fn sub(a: &str, b: &str) -> Axiom {
    Axiom::SubClassOf {
        sub: atom(a),
        sup: atom(b),
    }
}

fn doc(axioms: Vec<Axiom>) -> Document {
    Document::from_ontology(Ontology::with_axioms(axioms), EngineConfig::default()).unwrap()
}

fn pizza() -> Document {
    Document::from_text(&fixture("pizza.ofn"), EngineConfig::default()).unwrap()
}

fn idx(d: &Document, name: &str) -> usize {
    d.graph.node_of(&atom(name)).unwrap()
}

fn pz(d: &Document, name: &str) -> usize {
    d.graph
        .node_of(&CE::Atomic(Iri::new(format!("http://example.org/pizza#{name}")).unwrap()))
        .unwrap()
}

fn bare(d: &Document) -> ViewState {
    ViewState::new(&d.graph)
}

fn show(v: &mut ViewState, nodes: &[usize]) {
    v.visible.extend(nodes.iter().copied());
}

/// A with ten children B0..B9.
fn fan() -> Document {
    let mut axioms: Vec<Axiom> = (0..10).map(|i| sub(&format!("B{i}"), "A")).collect();
    axioms.push(sub("A", "Top"));
    doc(axioms)
}

#[test]
fn step_of_twenty_percent_over_ten_reveals_two() {
    let d = fan();
    let mut v = bare(&d);
    let a = idx(&d, "A");
    show(&mut v, &[idx(&d, "Top"), a]);
    set_step(&mut v, 20.0).unwrap();
    let c = d.context(&v).expand(&mut v, a, Direction::Descendants).unwrap();
    assert_eq!(c.shown.len(), 2);
    assert_eq!(d.context(&v).visible_ratio(&v, a), (2, 10));
}

#[test]
fn step_never_rounds_to_zero() {
    assert_eq!(step_size(10.0, 1), 1);
    assert_eq!(step_size(20.0, 10), 2);
    assert_eq!(step_size(25.0, 10), 3);
    let d = doc(vec![sub("B", "A")]);
    let mut v = bare(&d);
    let a = idx(&d, "A");
    show(&mut v, &[a]);
    set_step(&mut v, 10.0).unwrap();
    let c = d.context(&v).expand(&mut v, a, Direction::Descendants).unwrap();
    assert_eq!(c.shown, vec![idx(&d, "B")]);
}

#[test]
fn expanding_with_nothing_hidden_is_flagged() {
    let d = doc(vec![sub("B", "A")]);
    let mut v = bare(&d);
    let (a, b) = (idx(&d, "A"), idx(&d, "B"));
    show(&mut v, &[a, b]);
    let c = d.context(&v).expand(&mut v, a, Direction::Descendants).unwrap();
    assert!(c.is_noop());
    let c = d.context(&v).expand(&mut v, b, Direction::Descendants).unwrap();
    assert!(c.is_noop());
}

#[test]
fn expanding_a_hidden_node_is_an_error() {
    let d = doc(vec![sub("B", "A")]);
    let mut v = bare(&d);
    let err = d.context(&v).expand(&mut v, idx(&d, "B"), Direction::Descendants).unwrap_err();
    assert!(matches!(err, ViewError::NotVisible(_)));
}

/// A ⊒ B, C; B ⊒ D; C ⊒ E.
fn two_levels() -> Document {
    doc(vec![sub("B", "A"), sub("C", "A"), sub("D", "B"), sub("E", "C")])
}

#[test]
fn general_first_fills_the_nearer_level_first() {
    let d = two_levels();
    let mut v = bare(&d);
    let a = idx(&d, "A");
    show(&mut v, &[a]);
    set_step(&mut v, 50.0).unwrap();
    v.policy = Some(Policy::GeneralFirst);
    let c = d.context(&v).expand(&mut v, a, Direction::Descendants).unwrap();
    let got: BTreeSet<usize> = c.shown.into_iter().collect();
    assert_eq!(got, BTreeSet::from([idx(&d, "B"), idx(&d, "C")]));
}

#[test]
fn specific_first_starts_from_the_deepest_level() {
    let d = two_levels();
    let mut v = bare(&d);
    let a = idx(&d, "A");
    show(&mut v, &[a]);
    set_step(&mut v, 50.0).unwrap();
    v.policy = Some(Policy::SpecificFirst);
    let c = d.context(&v).expand(&mut v, a, Direction::Descendants).unwrap();
    let got: BTreeSet<usize> = c.shown.into_iter().collect();
    assert_eq!(got, BTreeSet::from([idx(&d, "D"), idx(&d, "E")]));
}

#[test]
fn relevance_policy_ignores_levels() {
    let d = two_levels();
    let ctx = ViewContext::new(&d.graph, &d.levels, d.scores_for("pagerank"));
    let order = ctx.policy_order(idx(&d, "A"), Direction::Descendants, Policy::Relevance);
    let scores = d.scores_for("pagerank");
    assert!(order.windows(2).all(|w| scores[w[0]] >= scores[w[1]]));
}

#[test]
fn level_ties_fall_back_to_relevance_then_label() {
    let d = two_levels();
    let ctx = ViewContext::new(&d.graph, &d.levels, d.scores_for("pagerank"));
    let order = ctx.policy_order(idx(&d, "A"), Direction::Descendants, Policy::GeneralFirst);
    let names: Vec<&str> = order.iter().map(|&i| d.graph.node(i).label.as_str()).collect();
    assert_eq!(names, ["B", "C", "D", "E"]);
}

#[test]
fn collapse_undoes_expand() {
    let d = fan();
    let mut v = bare(&d);
    let a = idx(&d, "A");
    show(&mut v, &[idx(&d, "Top"), a]);
    set_step(&mut v, 20.0).unwrap();
    let before = v.visible.clone();
    let ctx = d.context(&v);
    ctx.expand(&mut v, a, Direction::Descendants).unwrap();
    ctx.expand(&mut v, a, Direction::Descendants).unwrap();
    let mid = v.visible.clone();
    ctx.expand(&mut v, a, Direction::Descendants).unwrap();
    ctx.collapse(&mut v, a, Direction::Descendants).unwrap();
    assert_eq!(v.visible, mid);
    ctx.collapse(&mut v, a, Direction::Descendants).unwrap();
    ctx.collapse(&mut v, a, Direction::Descendants).unwrap();
    assert_eq!(v.visible, before);
    let c = ctx.collapse(&mut v, a, Direction::Descendants).unwrap();
    assert!(c.is_noop());
}

#[test]
fn ancestor_with_another_visible_child_stays() {
    // X ⊑ P ⊑ R, Y ⊑ P: collapsing X's ancestors must keep P while Y shows.
    let d = doc(vec![sub("X", "P"), sub("Y", "P"), sub("P", "R")]);
    let (x, y, p, r) = (idx(&d, "X"), idx(&d, "Y"), idx(&d, "P"), idx(&d, "R"));
    let mut v = bare(&d);
    show(&mut v, &[x, y, p, r]);
    set_step(&mut v, 100.0).unwrap();
    let c = d.context(&v).collapse(&mut v, x, Direction::Ancestors).unwrap();
    assert!(v.is_visible(p));
    assert!(!v.is_visible(r) || c.kept.contains(&r));
    assert!(c.kept.contains(&p));
    assert!(v.is_visible(d.graph.top()));

    let mut w = bare(&d);
    show(&mut w, &[x, p, r]);
    set_step(&mut w, 100.0).unwrap();
    d.context(&w).collapse(&mut w, x, Direction::Ancestors).unwrap();
    assert_eq!(w.visible, BTreeSet::from([d.graph.top(), x]));
}

#[test]
fn ancestors_expand_symmetrically() {
    let d = doc(vec![sub("X", "P"), sub("P", "R")]);
    let (x, p, r) = (idx(&d, "X"), idx(&d, "P"), idx(&d, "R"));
    let mut v = bare(&d);
    show(&mut v, &[x]);
    set_step(&mut v, 30.0).unwrap();
    v.policy = Some(Policy::GeneralFirst);
    let ctx = d.context(&v);
    let c = ctx.expand(&mut v, x, Direction::Ancestors).unwrap();
    assert_eq!(c.shown, vec![p]);
    let c = ctx.expand(&mut v, x, Direction::Ancestors).unwrap();
    assert_eq!(c.shown, vec![r]);
    ctx.collapse(&mut v, x, Direction::Ancestors).unwrap();
    assert_eq!(v.visible, BTreeSet::from([d.graph.top(), x, p]));
}

#[test]
fn slider_extremes() {
    let d = pizza();
    let mut v = bare(&d);
    let ctx = d.context(&v);
    let top = d.graph.top();
    ctx.set_slider(&mut v, top, 100.0).unwrap();
    assert_eq!(v.visible.len(), d.graph.len());
    ctx.set_slider(&mut v, top, 0.0).unwrap();
    assert_eq!(v.visible, BTreeSet::from([top]));
    assert!(matches!(
        ctx.set_slider(&mut v, top, 101.0),
        Err(ViewError::InvalidPercent(_))
    ));
}

#[test]
fn slider_at_thing_grows_from_five_to_fifteen_percent() {
    let d = pizza();
    let top = d.graph.top();
    let mut v5 = bare(&d);
    d.context(&v5).set_slider(&mut v5, top, 5.0).unwrap();
    let mut v15 = bare(&d);
    d.context(&v15).set_slider(&mut v15, top, 15.0).unwrap();
    assert!(v5.visible.is_subset(&v15.visible));
    assert!(v15.visible.len() > v5.visible.len());
    assert_eq!(v15.sliders.get(&top), Some(&15.0));
}

#[test]
fn slider_is_monotone_for_every_policy() {
    let d = pizza();
    let pizza_node = pz(&d, "Pizza");
    for policy in [Policy::Relevance, Policy::GeneralFirst, Policy::SpecificFirst] {
        let mut prev: BTreeSet<usize> = BTreeSet::new();
        for p in (0..=100).step_by(5) {
            let mut v = bare(&d);
            v.policy = Some(policy);
            show(&mut v, &[pizza_node]);
            d.context(&v).set_slider(&mut v, pizza_node, p as f64).unwrap();
            assert!(prev.is_subset(&v.visible), "{policy:?} at {p}%");
            prev = v.visible;
        }
    }
}

#[test]
fn visible_ratio_counts() {
    let d = two_levels();
    let mut v = bare(&d);
    let ctx = d.context(&v);
    assert_eq!(ctx.visible_ratio(&v, idx(&d, "E")), (0, 0));
    ctx.set_slider(&mut v, d.graph.top(), 100.0).unwrap();
    assert_eq!(ctx.visible_ratio(&v, d.graph.top()), (5, 5));
}

/// Every isA path from `from` up to `to`, as node lists.
fn all_paths(g: &OntoGraph, from: usize, to: usize) -> Vec<Vec<usize>> {
    if from == to {
        return vec![vec![to]];
    }
    let mut out = Vec::new();
    for &p in &g.node(from).parents {
        for mut rest in all_paths(g, p, to) {
            rest.insert(0, from);
            out.push(rest);
        }
    }
    out
}

fn dashed_by_paths(g: &OntoGraph, v: &ViewState) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for &d in &v.visible {
        for &a in &v.visible {
            if d == a || g.node(d).parents.contains(&a) {
                continue;
            }
            let paths = all_paths(g, d, a);
            if paths.is_empty() {
                continue;
            }
            let clear = paths
                .iter()
                .all(|p| p[1..p.len() - 1].iter().all(|n| !v.is_visible(*n)));
            if clear {
                out.push((d, a));
            }
        }
    }
    out.sort_unstable();
    out
}

#[test]
fn dashed_chain_and_diamond() {
    // chain C ⊑ B ⊑ A with B hidden
    let d = doc(vec![sub("C", "B"), sub("B", "A")]);
    let mut v = bare(&d);
    show(&mut v, &[idx(&d, "A"), idx(&d, "C")]);
    assert_eq!(derive_dashed(&v, &d.graph), vec![(idx(&d, "C"), idx(&d, "A"))]);
    show(&mut v, &[idx(&d, "B")]);
    assert!(derive_dashed(&v, &d.graph).is_empty());

    // diamond D ⊑ B ⊑ A, D ⊑ C ⊑ A with C hidden
    let d = doc(vec![sub("D", "B"), sub("D", "C"), sub("B", "A"), sub("C", "A")]);
    let mut v = bare(&d);
    show(&mut v, &[idx(&d, "A"), idx(&d, "B"), idx(&d, "D")]);
    assert!(derive_dashed(&v, &d.graph).is_empty());
    assert_eq!(derive_dashed(&v, &d.graph), dashed_by_paths(&d.graph, &v));
}

#[test]
fn dashed_edges_match_path_enumeration() {
    let cfg = GenConfig {
        classes: 25,
        axioms: 40,
        ..GenConfig::default()
    };
    let mut checked = 0;
    for seed in 0..60 {
        let Ok(d) = Document::from_ontology(random_ontology(seed, &cfg), EngineConfig::default()) else {
            continue;
        };
        let mut r = rng(seed);
        for _ in 0..5 {
            let mut v = bare(&d);
            for i in 0..d.graph.len() {
                if r.random_bool(0.4) {
                    v.visible.insert(i);
                }
            }
            let dashed = derive_dashed(&v, &d.graph);
            assert_eq!(dashed, dashed_by_paths(&d.graph, &v), "seed {seed}");
            for &(a, b) in &dashed {
                let (x, y) = (&d.graph.node(a).expression, &d.graph.node(b).expression);
                assert!(d.reasoner.is_subsumed(x, y).unwrap_or(true));
            }
            checked += 1;
        }
    }
    assert!(checked > 100);
}

#[test]
fn everything_visible_means_no_dashed_edges() {
    let d = pizza();
    let mut v = bare(&d);
    d.context(&v).set_slider(&mut v, d.graph.top(), 100.0).unwrap();
    assert!(derive_dashed(&v, &d.graph).is_empty());
}

#[test]
fn search_examples() {
    let d = pizza();
    let hits = search(&d.graph, "pizza");
    assert!(hits.contains(&pz(&d, "ThinAndCrispyPizza")));
    let key = |i: usize| {
        let n = d.graph.node(i);
        let pos = std::iter::once(&n.label)
            .chain(&n.annotations)
            .chain(&n.equivalents)
            .filter_map(|t| t.to_lowercase().find("pizza"))
            .min()
            .unwrap();
        (pos, n.label.clone())
    };
    assert!(hits.windows(2).all(|w| key(w[0]) <= key(w[1])));
    let expected = (0..d.graph.len())
        .filter(|&i| {
            let n = d.graph.node(i);
            std::iter::once(&n.label)
                .chain(&n.annotations)
                .chain(&n.equivalents)
                .any(|t| t.to_lowercase().contains("pizza"))
        })
        .count();
    assert_eq!(hits.len(), expected);

    let anon = search(&d.graph, "hasBase some PizzaBase");
    assert!(!anon.is_empty());
    // the domain of hasBase makes it equivalent to `Pizza and (hasBase some Thing)`
    assert!(anon.iter().any(|&i| {
        let n = d.graph.node(i);
        n.kind == NodeKind::Anonymous
            && (n.label == "hasBase some PizzaBase" || n.equivalents.iter().any(|e| e == "hasBase some PizzaBase"))
    }));

    assert!(search(&d.graph, "zzzz-no-such-term").is_empty());
    assert!(!search(&d.graph, "Spicy pizza").is_empty(), "rdfs:label text is searchable");
}

#[test]
fn default_view_round_trips() {
    let d = pizza();
    let v = d.initial_view();
    let text = save_view(&v, &d.graph);
    assert_eq!(load_view(&text, &d.graph).unwrap(), v);
}

#[test]
fn customised_view_round_trips() {
    let d = pizza();
    let mut v = d.initial_view();
    let ctx = d.context(&v);
    let p = pz(&d, "Pizza");
    v.visible.insert(p);
    ctx.set_slider(&mut v, p, 40.0).unwrap();
    ctx.move_node(&mut v, p, Some((123.25, 0.1 + 0.2))).unwrap();
    ctx.set_markers(
        &mut v,
        p,
        Markers {
            disjoint: true,
            properties: true,
        },
    )
    .unwrap();
    ctx.select(&mut v, Some(p)).unwrap();
    v.policy = Some(Policy::SpecificFirst);
    v.zoom = 1.75;
    set_step(&mut v, 12.5).unwrap();
    let text = save_view(&v, &d.graph);
    assert_eq!(load_view(&text, &d.graph).unwrap(), v);
}

#[test]
fn unknown_ids_are_listed() {
    let d = pizza();
    let v = d.initial_view();
    let text = save_view(&v, &d.graph).replacen(&d.graph.node(d.graph.top()).id, "n0000000000000000", 1);
    match load_view(&text, &d.graph) {
        Err(ViewError::UnknownNodes(ids)) => assert_eq!(ids, vec!["n0000000000000000".to_string()]),
        other => panic!("{other:?}"),
    }
}

#[test]
fn version_mismatch_is_rejected() {
    let d = pizza();
    let text = save_view(&d.initial_view(), &d.graph)
        .replace(&format!("\"version\": {VIEW_VERSION}"), "\"version\": 99");
    assert!(matches!(
        load_view(&text, &d.graph),
        Err(ViewError::VersionMismatch { found: 99, .. })
    ));
    assert!(matches!(load_view("{", &d.graph), Err(ViewError::Malformed(_))));
}

#[test]
fn ids_rebind_after_reloading_the_ontology() {
    let d1 = pizza();
    let mut v = d1.initial_view();
    d1.context(&v).set_slider(&mut v, d1.graph.top(), 30.0).unwrap();
    let text = save_view(&v, &d1.graph);
    let d2 = pizza();
    let w = load_view(&text, &d2.graph).unwrap();
    let names = |d: &Document, s: &BTreeSet<usize>| -> BTreeSet<String> {
        s.iter().map(|&i| d.graph.node(i).expression.to_functional()).collect()
    };
    assert_eq!(names(&d1, &v.visible), names(&d2, &w.visible));
}

fn svg_of(d: &Document, v: &ViewState) -> String {
    let ctx = d.context(v);
    let lay = view_layout(&ctx, v, &d.config.layout);
    export_svg(&ctx, v, &lay)
}

#[test]
fn thing_only_svg_has_one_node() {
    let d = pizza();
    let v = bare(&d);
    let svg = svg_of(&d, &v);
    assert_eq!(svg.matches("class=\"node-box\"").count(), 1);
    assert!(svg.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
}

#[test]
fn svg_is_deterministic_and_complete() {
    let d = pizza();
    let mut v = d.initial_view();
    let ctx = d.context(&v);
    ctx.set_slider(&mut v, d.graph.top(), 35.0).unwrap();
    let spicy = pz(&d, "Spicy");
    v.visible.insert(spicy);
    let hot = pz(&d, "Hot");
    v.visible.insert(hot);
    v.visible.insert(pz(&d, "Mild"));
    ctx.set_markers(&mut v, hot, Markers { disjoint: true, properties: false }).unwrap();
    let a = svg_of(&d, &v);
    let b = svg_of(&pizza(), &v);
    assert_eq!(a, b);
    assert_eq!(a.matches("class=\"node-box\"").count(), v.visible.len());
    assert!(a.contains("class=\"isa\""));
    assert!(a.contains("class=\"level-guide\""));
    assert!(a.contains("class=\"equiv-band\""), "Spicy is defined");
    assert!(a.contains("class=\"disjoint\""));
}

#[test]
fn dashed_edges_are_drawn_dashed() {
    let d = doc(vec![sub("C", "B"), sub("B", "A")]);
    let mut v = bare(&d);
    show(&mut v, &[idx(&d, "A"), idx(&d, "C")]);
    let svg = svg_of(&d, &v);
    assert!(svg.contains("class=\"dashed\""));
    assert!(svg.contains("stroke-dasharray=\"6 4\""));
}

#[test]
fn property_markers_show_ranges() {
    let d = pizza();
    let mut v = bare(&d);
    let (p, base) = (pz(&d, "Pizza"), pz(&d, "PizzaBase"));
    show(&mut v, &[p, base, pz(&d, "Food")]);
    let closed = svg_of(&d, &v);
    d.context(&v)
        .set_markers(&mut v, p, Markers { disjoint: false, properties: true })
        .unwrap();
    let open = svg_of(&d, &v);
    assert!(!closed.contains("class=\"property\""));
    assert!(open.contains("class=\"property\""));
    assert!(open.contains("hasBase: PizzaBase (F)"));
    assert!(open.contains("class=\"range\""));
}

/// Random operation sequences on random ontologies and the Pizza fixture.
#[test]
fn random_operation_sequences_keep_the_invariants() {
    let cfg = GenConfig {
        classes: 20,
        axioms: 35,
        ..GenConfig::default()
    };
    let mut docs: Vec<Document> = (0..8)
        .filter_map(|s| Document::from_ontology(random_ontology(500 + s, &cfg), EngineConfig::default()).ok())
        .collect();
    docs.push(pizza());
    let mut r = rng(77);
    let mut inverse_checks = 0;
    for d in &docs {
        let mut v = d.initial_view();
        for step in 0..1000 {
            let ctx = d.context(&v);
            let visible: Vec<usize> = v.visible.iter().copied().collect();
            let node = visible[r.random_range(0..visible.len())];
            let dir = if r.random_bool(0.7) { Direction::Descendants } else { Direction::Ancestors };
            match r.random_range(0..10) {
                0..=3 => {
                    let before = v.visible.clone();
                    let policy = ctx.policy_at(&v, node);
                    let order: Vec<usize> = ctx
                        .policy_order(node, dir, policy)
                        .into_iter()
                        .filter(|&i| i != d.graph.top())
                        .collect();
                    let shown_prefix = order.iter().take_while(|i| before.contains(i)).count();
                    let is_prefix = order.iter().filter(|i| before.contains(i)).count() == shown_prefix;
                    let k = step_size(v.step_percent, ctx.policy_order(node, dir, policy).len());
                    let c = ctx.expand(&mut v, node, dir).unwrap();
                    assert!(c.shown.len() <= k);
                    if is_prefix && c.shown.len() == k && dir == Direction::Descendants {
                        let mut w = v.clone();
                        ctx.collapse(&mut w, node, dir).unwrap();
                        assert_eq!(w.visible, before, "step {step}");
                        inverse_checks += 1;
                    }
                }
                4..=5 => {
                    ctx.collapse(&mut v, node, dir).unwrap();
                }
                6 => {
                    let p = r.random_range(0..=100) as f64;
                    ctx.set_slider(&mut v, node, p).unwrap();
                    let mut lower = v.clone();
                    ctx.set_slider(&mut lower, node, p / 2.0).unwrap();
                    assert!(lower.visible.is_subset(&v.visible));
                }
                7 => {
                    set_step(&mut v, [5.0, 10.0, 25.0, 50.0, 100.0][r.random_range(0..5)]).unwrap();
                }
                8 => {
                    v.policy = [None, Some(Policy::Relevance), Some(Policy::GeneralFirst), Some(Policy::SpecificFirst)]
                        [r.random_range(0..4)];
                }
                _ => {
                    ctx.select(&mut v, Some(node)).unwrap();
                }
            }
            assert!(v.is_visible(d.graph.top()));
            for &n in &v.visible {
                let desc = d.graph.descendants(n);
                let expected = v.visible.iter().filter(|&&i| desc.contains(i)).count();
                assert_eq!(ctx.visible_ratio(&v, n), (expected, desc.count_ones(..)));
            }
            if step % 50 == 0 {
                for (a, b) in derive_dashed(&v, &d.graph) {
                    assert!(d.graph.is_ancestor(b, a));
                    let (x, y) = (&d.graph.node(a).expression, &d.graph.node(b).expression);
                    assert!(d.reasoner.is_subsumed(x, y).unwrap());
                }
            }
        }
    }
    assert!(inverse_checks > 50, "only {inverse_checks} inverse checks");
}

#[test]
fn range_edges_are_routed_orthogonally_into_distinct_ports() {
    let d = pizza();
    let g = &d.graph;
    let mut v = bare(&d);
    let all: Vec<usize> = (0..g.len()).collect();
    show(&mut v, &all);
    for (i, n) in g.nodes.iter().enumerate() {
        if !n.domain_of.is_empty() {
            v.markers.insert(i, Markers { disjoint: false, properties: true });
        }
    }
    let ctx = d.context(&v);
    let lay = view_layout(&ctx, &v, &Default::default());
    let expected = g.range_edges.iter().filter(|r| v.markers(r.from).properties).count();
    assert!(expected > 0);
    assert_eq!(lay.ranges.len(), expected);

    let mut ports = BTreeSet::new();
    let mut verticals = Vec::new();
    for r in &lay.ranges {
        let pts = &r.route;
        for w in pts.windows(2) {
            assert!(w[0].0 == w[1].0 || w[0].1 == w[1].1, "segment not axis-aligned: {w:?}");
        }
        let (src, dst) = (lay.rect_of(r.from).unwrap(), lay.rect_of(r.to).unwrap());
        let (first, last) = (pts[0], pts[pts.len() - 1]);
        assert_eq!(first.0, src.x + src.width);
        assert!(first.1 > src.y && first.1 < src.y + src.height);
        assert_eq!(last.0, dst.x + dst.width);
        assert!(last.1 > dst.y && last.1 < dst.y + dst.height);
        assert!(ports.insert((r.to, last.1.to_bits())), "two edges share a port");
        assert!(last.0 <= lay.width && pts[1].0 < lay.width);
        verticals.push((pts[1].0, pts[1].1.min(pts[2].1), pts[1].1.max(pts[2].1)));
    }
    for (a, x) in verticals.iter().enumerate() {
        for y in &verticals[a + 1..] {
            let overlap = x.1 <= y.2 + 1.0 && y.1 <= x.2 + 1.0;
            assert!(!(x.0 == y.0 && overlap), "vertical lanes overlap: {x:?} {y:?}");
        }
    }
    let svg = export_svg(&ctx, &v, &lay);
    assert_eq!(svg.matches("class=\"range\"").count(), expected);
}
