use std::collections::BTreeSet;

use crate::expr::ClassExpression as CE;
use crate::ontology::Ontology;
use crate::reasoner::{direct_neighbors_among, Reasoner, Taxonomy};

use super::{DetailWindow, GraphError, OntoGraph, OntoNode};

/// One node per satisfiable named equivalence class plus Thing, with the
/// taxonomy's direct edges. Unsatisfiable names are kept aside for the
/// Nothing node, which is only materialized by [`place_expressions`].
pub fn build_scaffold(t: &Taxonomy) -> OntoGraph {
    let keep: Vec<usize> = (0..t.nodes.len()).filter(|&i| i != Taxonomy::BOTTOM).collect();
    let mut new_index = vec![usize::MAX; t.nodes.len()];
    for (new, &old) in keep.iter().enumerate() {
        new_index[old] = new;
    }
    let nodes = keep
        .iter()
        .map(|&old| {
            let mut node = OntoNode::new(t.nodes[old].members.clone());
            node.parents = t.parents[old].iter().map(|&p| new_index[p]).collect();
            node.children = t.children[old]
                .iter()
                .filter(|&&c| c != Taxonomy::BOTTOM)
                .map(|&c| new_index[c])
                .collect();
            node
        })
        .collect();
    let mut g = OntoGraph::from_nodes(nodes, DetailWindow::default());
    g.unsatisfiable = t.nodes[Taxonomy::BOTTOM]
        .members
        .iter()
        .filter(|m| **m != CE::Nothing)
        .cloned()
        .collect();
    g.finalize();
    g
}

/// Every anonymous expression occurring at axiom level: subclass axiom
/// sides, equivalence and disjointness members, property domains, object
/// property ranges and class assertion types. Canonical, sorted, deduplicated.
pub fn harvest_expressions(o: &Ontology) -> Vec<CE> {
    let mut out = BTreeSet::new();
    for ax in &o.axioms {
        for ce in ax.class_expressions() {
            if ce.is_anonymous() {
                out.insert(ce.canonical());
            }
        }
    }
    out.into_iter().collect()
}

/// Removes a materialized Nothing node, returning its members to the
/// unsatisfiable list.
fn detach_bottom(g: &mut OntoGraph) {
    let Some(b) = g.bottom() else { return };
    let node = g.nodes.remove(b);
    g.unsatisfiable
        .extend(node.members.into_iter().filter(|m| *m != CE::Nothing));
    for n in &mut g.nodes {
        n.children.retain(|&c| c != b);
        n.parents.retain(|&p| p != b);
        for v in [&mut n.children, &mut n.parents] {
            for x in v.iter_mut() {
                if *x > b {
                    *x -= 1;
                }
            }
        }
    }
    g.reindex();
}

/// Inserts each expression within the window into the graph: merged into
/// an equivalent node if there is one, else linked to its direct
/// subsumers/subsumees with the edges it now mediates removed. The result
/// does not depend on the order of `exprs`.
pub fn place_expressions(
    mut g: OntoGraph,
    reasoner: &Reasoner,
    exprs: &[CE],
    window: &DetailWindow,
) -> Result<OntoGraph, GraphError> {
    let window = DetailWindow::new(window.upper.clone(), window.lower.clone());
    let exprs: BTreeSet<CE> = exprs.iter().map(CE::canonical).collect();
    let missing: Vec<&CE> = exprs
        .iter()
        .chain([&window.upper, &window.lower])
        .filter(|e| !reasoner.is_registered(e))
        .collect();
    let extended;
    let r = if missing.is_empty() {
        reasoner
    } else {
        extended = reasoner.extended(missing)?;
        &extended
    };
    let sub = |a: &CE, b: &CE| r.subsumed_registered(a, b).expect("registered");
    if !sub(&window.lower, &window.upper) {
        return Err(GraphError::InvalidWindow {
            upper: window.upper.render(),
            lower: window.lower.render(),
        });
    }

    detach_bottom(&mut g);
    g.window = window.clone();
    g.stats.harvested += exprs.len();
    for e in &exprs {
        if g.node_of(e).is_some() || g.unsatisfiable.contains(e) {
            g.stats.merged += 1;
            continue;
        }
        if !(sub(&window.lower, e) && sub(e, &window.upper)) {
            g.stats.filtered += 1;
            continue;
        }
        if sub(e, &CE::Nothing) {
            g.unsatisfiable.push(e.clone());
            g.stats.merged += 1;
            continue;
        }
        let reps: Vec<&CE> = g.nodes.iter().map(|n| &n.expression).collect();
        let nb = direct_neighbors_among(r, e, &reps);
        if let Some(eq) = nb.equivalent {
            g.nodes[eq].members.push(e.clone());
            g.nodes[eq].refresh();
            g.stats.merged += 1;
        } else {
            let idx = g.nodes.len();
            let mut node = OntoNode::new(vec![e.clone()]);
            for &c in &nb.subs {
                for &p in &nb.supers {
                    g.nodes[c].parents.retain(|&x| x != p);
                    g.nodes[p].children.retain(|&x| x != c);
                }
                g.nodes[c].parents.push(idx);
            }
            for &p in &nb.supers {
                g.nodes[p].children.push(idx);
            }
            node.parents = nb.supers;
            node.children = nb.subs;
            g.nodes.push(node);
            g.stats.inserted += 1;
        }
        g.reindex();
    }

    if !g.unsatisfiable.is_empty() {
        let mut members = std::mem::take(&mut g.unsatisfiable);
        members.push(CE::Nothing);
        let mut bottom = OntoNode::new(members);
        let b = g.nodes.len();
        for (i, n) in g.nodes.iter_mut().enumerate() {
            if n.children.is_empty() {
                n.children.push(b);
                bottom.parents.push(i);
            }
        }
        g.nodes.push(bottom);
    }
    g.finalize();
    Ok(g)
}
