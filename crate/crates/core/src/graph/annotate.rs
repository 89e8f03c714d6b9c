use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::expr::ClassExpression as CE;
use crate::iri::Iri;
use crate::ontology::{Axiom, Characteristic, Ontology, PropertyRange};
use crate::reasoner::{direct_neighbors_among, Reasoner};

use super::{DisjointPair, NodeKind, OntoGraph, PropertyDescriptor, RangeEdge};

/// Sibling pairs beyond this many are not checked for inferred disjointness.
const MAX_SIBLING_PAIRS: usize = 50_000;

#[derive(Default)]
struct PropertyInfo {
    data: bool,
    domains: Vec<CE>,
    class_ranges: Vec<CE>,
    datatypes: Vec<String>,
    functional: bool,
    transitive: bool,
    inverse_of: BTreeSet<Iri>,
    supers: BTreeSet<Iri>,
}

/// Where an expression lives in the graph: its own node, or (if the window
/// filtered it out) its nearest placed ancestors, flagged approximate.
fn resolve(g: &OntoGraph, r: &Reasoner, ce: &CE) -> (Vec<usize>, bool) {
    if let Some(i) = g.node_of(ce) {
        return (vec![i], false);
    }
    let extended;
    let reps: Vec<&CE> = g.nodes.iter().map(|n| &n.expression).collect();
    let mut needed: Vec<&CE> = reps.iter().copied().filter(|c| !r.is_registered(c)).collect();
    if !r.is_registered(ce) {
        needed.push(ce);
    }
    let r = if needed.is_empty() {
        r
    } else {
        match r.extended(needed) {
            Ok(ext) => {
                extended = ext;
                &extended
            }
            Err(_) => return (vec![g.top()], true),
        }
    };
    let nb = direct_neighbors_among(r, ce, &reps);
    match nb.equivalent {
        Some(i) => (vec![i], false),
        None if nb.supers.is_empty() => (vec![g.top()], true),
        None => (nb.supers, true),
    }
}

/// Attaches property descriptors (domains, ranges, characteristics),
/// sub-property edges, asserted and inferred disjointness, instances and
/// `rdfs:label` annotations.
pub fn attach_annotations(mut g: OntoGraph, o: &Ontology, r: &Reasoner) -> OntoGraph {
    let mut labels: HashMap<&Iri, Vec<String>> = HashMap::new();
    let mut props: BTreeMap<Iri, PropertyInfo> = BTreeMap::new();
    let sig = o.signature();
    for p in &sig.object_properties {
        props.entry(p.clone()).or_default();
    }
    for p in &sig.data_properties {
        props.entry(p.clone()).or_default().data = true;
    }
    let mut defined_names: BTreeSet<&Iri> = BTreeSet::new();
    let mut asserted_disjoint: BTreeSet<(usize, usize)> = BTreeSet::new();

    for ax in &o.axioms {
        match ax {
            Axiom::Label { subject, value, .. } => {
                labels.entry(subject).or_default().push(value.clone());
            }
            Axiom::EquivalentClasses(ms) => {
                let distinct: BTreeSet<CE> = ms.iter().map(CE::canonical).collect();
                if distinct.len() > 1 {
                    defined_names.extend(ms.iter().filter_map(CE::as_atomic));
                }
            }
            Axiom::DisjointClasses(ms) => {
                let nodes: Vec<usize> = ms.iter().filter_map(|m| g.node_of(m)).collect();
                for (i, &a) in nodes.iter().enumerate() {
                    for &b in &nodes[i + 1..] {
                        if a != b {
                            asserted_disjoint.insert((a.min(b), a.max(b)));
                        }
                    }
                }
            }
            Axiom::PropertyDomain {
                property, domain, ..
            } => {
                props.entry(property.clone()).or_default().domains.push(domain.canonical());
            }
            Axiom::PropertyRange {
                property, range, ..
            } => {
                let info = props.entry(property.clone()).or_default();
                match range {
                    PropertyRange::Class(c) => info.class_ranges.push(c.canonical()),
                    PropertyRange::Datatype(d) => info.datatypes.push(d.compact()),
                }
            }
            Axiom::SubPropertyOf { sub, sup } => {
                props.entry(sub.clone()).or_default().supers.insert(sup.clone());
                g.sub_property_edges.push((sub.clone(), sup.clone()));
            }
            Axiom::PropertyCharacteristic { property, kind } => {
                let info = props.entry(property.clone()).or_default();
                match kind {
                    Characteristic::Functional => info.functional = true,
                    Characteristic::Transitive => info.transitive = true,
                    Characteristic::InverseOf(other) => {
                        info.inverse_of.insert(other.clone());
                    }
                }
            }
            Axiom::ClassAssertion { individual, class } => {
                if let Some(i) = g.node_of(class) {
                    g.nodes[i].instances.push(individual.clone());
                }
            }
            _ => {}
        }
    }
    // Inverse declarations are symmetric.
    let inverses: Vec<(Iri, Iri)> = props
        .iter()
        .flat_map(|(p, info)| info.inverse_of.iter().map(move |q| (q.clone(), p.clone())))
        .collect();
    for (p, q) in inverses {
        props.entry(p).or_default().inverse_of.insert(q);
    }
    g.sub_property_edges.sort();
    g.sub_property_edges.dedup();

    for node in &mut g.nodes {
        let mut ann = Vec::new();
        for m in &node.members {
            if let Some(iri) = m.as_atomic() {
                if let Some(ls) = labels.get(iri) {
                    ann.extend(ls.iter().cloned());
                }
                if defined_names.contains(iri) {
                    node.kind = NodeKind::Defined;
                }
            }
        }
        ann.sort();
        ann.dedup();
        node.annotations = ann;
        node.instances.sort();
        node.instances.dedup();
    }

    for (iri, info) in &props {
        let mut range_nodes = Vec::new();
        for c in &info.class_ranges {
            range_nodes.extend(resolve(&g, r, c).0);
        }
        range_nodes.sort_unstable();
        range_nodes.dedup();
        let mut datatypes = info.datatypes.clone();
        datatypes.sort();
        datatypes.dedup();
        let mut attach: BTreeMap<usize, bool> = BTreeMap::new();
        if info.domains.is_empty() {
            attach.insert(g.top(), false);
        }
        for d in &info.domains {
            let (nodes, approximate) = resolve(&g, r, d);
            for n in nodes {
                let flag = attach.entry(n).or_insert(approximate);
                *flag &= approximate;
            }
        }
        for (&n, &approximate) in &attach {
            g.nodes[n].domain_of.push(PropertyDescriptor {
                iri: iri.clone(),
                is_data_property: info.data,
                range_nodes: range_nodes.clone(),
                range_datatypes: datatypes.clone(),
                functional: info.functional,
                transitive: info.transitive,
                inverse_of: info.inverse_of.iter().cloned().collect(),
                super_properties: info.supers.iter().cloned().collect(),
                approximate,
            });
            for &t in &range_nodes {
                g.range_edges.push(RangeEdge {
                    property: iri.clone(),
                    from: n,
                    to: t,
                });
            }
        }
    }
    g.range_edges.sort();
    g.range_edges.dedup();

    // Inferred disjointness between named siblings.
    let bottom = g.bottom();
    let mut candidates: BTreeSet<(usize, usize)> = BTreeSet::new();
    'outer: for node in &g.nodes {
        let kids: Vec<usize> = node
            .children
            .iter()
            .copied()
            .filter(|&c| Some(c) != bottom && g.nodes[c].expression.is_atomic())
            .collect();
        for (i, &a) in kids.iter().enumerate() {
            for &b in &kids[i + 1..] {
                let key = (a.min(b), a.max(b));
                if !asserted_disjoint.contains(&key) {
                    candidates.insert(key);
                }
                if candidates.len() >= MAX_SIBLING_PAIRS {
                    log::warn!("inferred disjointness limited to {MAX_SIBLING_PAIRS} sibling pairs");
                    break 'outer;
                }
            }
        }
    }
    let candidates: Vec<(usize, usize)> = candidates.into_iter().collect();
    let exprs: Vec<(CE, CE)> = candidates
        .iter()
        .map(|&(a, b)| (g.nodes[a].expression.clone(), g.nodes[b].expression.clone()))
        .collect();
    let inferred = r.unsatisfiable_pairs(&exprs).unwrap_or_default();
    g.disjoint_pairs = asserted_disjoint
        .iter()
        .map(|&(a, b)| DisjointPair { a, b, inferred: false })
        .chain(
            candidates
                .iter()
                .zip(inferred)
                .filter(|(_, unsat)| *unsat)
                .map(|(&(a, b), _)| DisjointPair { a, b, inferred: true }),
        )
        .collect();
    g.disjoint_pairs.sort();
    for n in &mut g.nodes {
        n.disjoint_with.clear();
    }
    for p in g.disjoint_pairs.clone() {
        g.nodes[p.a].disjoint_with.push(p.b);
        g.nodes[p.b].disjoint_with.push(p.a);
    }
    for n in &mut g.nodes {
        n.disjoint_with.sort_unstable();
        n.disjoint_with.dedup();
    }
    g
}
