//! The display graph.
//!
//! Built in two steps: a scaffold of the named-class taxonomy, then every
//! anonymous expression harvested from the axioms is placed into it (subject
//! to the detail window). Properties, ranges, disjointness and instances are
//! attached afterwards.

mod annotate;
mod place;

use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::expr::ClassExpression as CE;
use crate::iri::Iri;
use crate::ontology::Ontology;
use crate::reasoner::{Reasoner, ReasonerError, Taxonomy};

pub use annotate::attach_annotations;
pub use place::{build_scaffold, harvest_expressions, place_expressions};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("invalid detail window: {lower} is not subsumed by {upper}")]
    InvalidWindow { upper: String, lower: String },
    #[error(transparent)]
    Reasoner(#[from] ReasonerError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeKind {
    Primitive,
    Defined,
    Anonymous,
}

/// Upper and lower bound for the anonymous expressions that become nodes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetailWindow {
    pub upper: CE,
    pub lower: CE,
}

impl Default for DetailWindow {
    fn default() -> Self {
        DetailWindow {
            upper: CE::Thing,
            lower: CE::Nothing,
        }
    }
}

impl DetailWindow {
    pub fn new(upper: CE, lower: CE) -> Self {
        DetailWindow {
            upper: upper.canonical(),
            lower: lower.canonical(),
        }
    }

    pub fn is_default(&self) -> bool {
        *self == DetailWindow::default()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyDescriptor {
    pub iri: Iri,
    pub is_data_property: bool,
    /// Nodes carrying the object-property range expressions.
    pub range_nodes: Vec<usize>,
    /// Datatype ranges of data properties, compacted (`xsd:string`).
    pub range_datatypes: Vec<String>,
    pub functional: bool,
    pub transitive: bool,
    pub inverse_of: Vec<Iri>,
    pub super_properties: Vec<Iri>,
    /// The domain expression was outside the detail window; the property is
    /// shown on the nearest placed ancestors instead.
    pub approximate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OntoNode {
    /// Stable across reloads: derived from the representative expression.
    pub id: String,
    pub kind: NodeKind,
    pub label: String,
    /// Rendered members other than the representative.
    pub equivalents: Vec<String>,
    pub expression: CE,
    pub members: Vec<CE>,
    /// `rdfs:label` values of the atomic members.
    pub annotations: Vec<String>,
    pub parents: Vec<usize>,
    pub children: Vec<usize>,
    pub disjoint_with: Vec<usize>,
    pub domain_of: Vec<PropertyDescriptor>,
    pub instances: Vec<Iri>,
    pub total_descendants: usize,
}

impl OntoNode {
    pub(crate) fn new(members: Vec<CE>) -> Self {
        let mut node = OntoNode {
            id: String::new(),
            kind: NodeKind::Primitive,
            label: String::new(),
            equivalents: Vec::new(),
            expression: CE::Thing,
            members,
            annotations: Vec::new(),
            parents: Vec::new(),
            children: Vec::new(),
            disjoint_with: Vec::new(),
            domain_of: Vec::new(),
            instances: Vec::new(),
            total_descendants: 0,
        };
        node.refresh();
        node
    }

    /// Recomputes representative, label, id, kind and equivalents from the
    /// member list.
    pub(crate) fn refresh(&mut self) {
        self.members.sort();
        self.members.dedup();
        self.expression = crate::reasoner::representative(&self.members);
        self.label = self.expression.render();
        self.id = node_id(&self.expression);
        self.equivalents = self
            .members
            .iter()
            .filter(|m| **m != self.expression)
            .map(CE::render)
            .collect();
        let named = self
            .members
            .iter()
            .any(|m| matches!(m, CE::Atomic(_) | CE::Thing | CE::Nothing));
        self.kind = if !named {
            NodeKind::Anonymous
        } else if self.members.len() > 1 {
            NodeKind::Defined
        } else {
            NodeKind::Primitive
        };
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

/// `n` followed by 16 hex digits of the SHA-256 of the functional-syntax
/// form of the expression.
pub fn node_id(ce: &CE) -> String {
    let digest = Sha256::digest(ce.to_functional().as_bytes());
    let mut id = String::with_capacity(17);
    id.push('n');
    for b in &digest[..8] {
        id.push_str(&format!("{b:02x}"));
    }
    id
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RangeEdge {
    pub property: Iri,
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DisjointPair {
    pub a: usize,
    pub b: usize,
    /// Derived by the reasoner rather than asserted.
    pub inferred: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildStats {
    pub harvested: usize,
    pub filtered: usize,
    pub merged: usize,
    pub inserted: usize,
}

#[derive(Debug, Clone)]
pub struct OntoGraph {
    pub nodes: Vec<OntoNode>,
    pub range_edges: Vec<RangeEdge>,
    pub sub_property_edges: Vec<(Iri, Iri)>,
    pub disjoint_pairs: Vec<DisjointPair>,
    pub window: DetailWindow,
    pub stats: BuildStats,
    /// Members of the Nothing node while it has no node of its own.
    pub(crate) unsatisfiable: Vec<CE>,
    by_id: HashMap<String, usize>,
    by_member: HashMap<CE, usize>,
    descendants: Vec<FixedBitSet>,
    ancestors: Vec<FixedBitSet>,
}

impl OntoGraph {
    pub(crate) fn from_nodes(nodes: Vec<OntoNode>, window: DetailWindow) -> Self {
        let mut g = OntoGraph {
            nodes,
            range_edges: Vec::new(),
            sub_property_edges: Vec::new(),
            disjoint_pairs: Vec::new(),
            window,
            stats: BuildStats::default(),
            unsatisfiable: Vec::new(),
            by_id: HashMap::new(),
            by_member: HashMap::new(),
            descendants: Vec::new(),
            ancestors: Vec::new(),
        };
        g.reindex();
        g
    }

    pub(crate) fn reindex(&mut self) {
        self.by_id.clear();
        self.by_member.clear();
        for (i, n) in self.nodes.iter().enumerate() {
            self.by_id.insert(n.id.clone(), i);
            for m in &n.members {
                self.by_member.insert(m.clone(), i);
            }
        }
    }

    /// Index of the Thing node (always 0).
    pub fn top(&self) -> usize {
        0
    }

    /// Index of the Nothing node, present only when something is unsatisfiable.
    pub fn bottom(&self) -> Option<usize> {
        self.by_member.get(&CE::Nothing).copied()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Named classes and expressions equivalent to Nothing.
    pub fn unsatisfiable_count(&self) -> usize {
        self.bottom()
            .map_or(0, |b| self.nodes[b].members.len().saturating_sub(1))
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, idx: usize) -> &OntoNode {
        &self.nodes[idx]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.by_id.get(id).copied()
    }

    /// Node holding `ce` as a member.
    pub fn node_of(&self, ce: &CE) -> Option<usize> {
        self.by_member.get(&ce.canonical()).copied()
    }

    /// Direct isA edges as (child, parent).
    pub fn isa_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (c, n) in self.nodes.iter().enumerate() {
            for &p in &n.parents {
                out.push((c, p));
            }
        }
        out
    }

    pub fn descendants(&self, idx: usize) -> &FixedBitSet {
        &self.descendants[idx]
    }

    pub fn ancestors(&self, idx: usize) -> &FixedBitSet {
        &self.ancestors[idx]
    }

    /// `anc` is a strict ancestor of `desc`.
    pub fn is_ancestor(&self, anc: usize, desc: usize) -> bool {
        self.descendants[anc].contains(desc)
    }

    /// Nodes ordered so that every parent precedes its children.
    pub fn topological_order(&self) -> Vec<usize> {
        let mut indeg: Vec<usize> = self.nodes.iter().map(|n| n.parents.len()).collect();
        let mut ready: Vec<usize> = (0..self.nodes.len()).filter(|&i| indeg[i] == 0).collect();
        ready.reverse();
        let mut out = Vec::with_capacity(self.nodes.len());
        while let Some(i) = ready.pop() {
            out.push(i);
            for &c in self.nodes[i].children.iter().rev() {
                indeg[c] -= 1;
                if indeg[c] == 0 {
                    ready.push(c);
                }
            }
        }
        debug_assert_eq!(out.len(), self.nodes.len(), "isA edges contain a cycle");
        out
    }

    /// Fills descendant/ancestor sets and `total_descendants`.
    pub(crate) fn compute_closures(&mut self) {
        let n = self.nodes.len();
        let order = self.topological_order();
        let mut desc = vec![FixedBitSet::with_capacity(n); n];
        for &i in order.iter().rev() {
            let mut set = FixedBitSet::with_capacity(n);
            for &c in &self.nodes[i].children {
                set.insert(c);
                set.union_with(&desc[c]);
            }
            desc[i] = set;
        }
        let mut anc = vec![FixedBitSet::with_capacity(n); n];
        for &i in &order {
            let mut set = FixedBitSet::with_capacity(n);
            for &p in &self.nodes[i].parents {
                set.insert(p);
                set.union_with(&anc[p]);
            }
            anc[i] = set;
        }
        for (i, node) in self.nodes.iter_mut().enumerate() {
            node.total_descendants = desc[i].count_ones(..);
        }
        self.descendants = desc;
        self.ancestors = anc;
    }

    /// Sorts nodes (Thing first, Nothing last, the rest by label then id),
    /// remaps every index and recomputes closures.
    pub(crate) fn finalize(&mut self) {
        let n = self.nodes.len();
        let mut order: Vec<usize> = (0..n).collect();
        let rank = |node: &OntoNode| {
            if node.members.contains(&CE::Thing) {
                0
            } else if node.members.contains(&CE::Nothing) {
                2
            } else {
                1
            }
        };
        order.sort_by(|&a, &b| {
            let (x, y) = (&self.nodes[a], &self.nodes[b]);
            (rank(x), &x.label, &x.id).cmp(&(rank(y), &y.label, &y.id))
        });
        let mut new_index = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let mut old_nodes: Vec<Option<OntoNode>> = std::mem::take(&mut self.nodes).into_iter().map(Some).collect();
        let remap = |v: &mut Vec<usize>| {
            for x in v.iter_mut() {
                *x = new_index[*x];
            }
            v.sort_unstable();
            v.dedup();
        };
        for &old in &order {
            let mut node = old_nodes[old].take().expect("each node moved once");
            remap(&mut node.parents);
            remap(&mut node.children);
            remap(&mut node.disjoint_with);
            for d in &mut node.domain_of {
                remap(&mut d.range_nodes);
            }
            self.nodes.push(node);
        }
        for e in &mut self.range_edges {
            e.from = new_index[e.from];
            e.to = new_index[e.to];
        }
        self.range_edges.sort();
        self.range_edges.dedup();
        for p in &mut self.disjoint_pairs {
            let (a, b) = (new_index[p.a], new_index[p.b]);
            p.a = a.min(b);
            p.b = a.max(b);
        }
        self.disjoint_pairs.sort();
        self.disjoint_pairs.dedup_by(|x, y| x.a == y.a && x.b == y.b);
        self.reindex();
        self.compute_closures();
    }

    /// Named classes and expressions in the graph.
    pub fn expressions(&self) -> BTreeSet<&CE> {
        self.nodes.iter().flat_map(|n| n.members.iter()).collect()
    }
}

/// Full build: scaffold, harvest, place and annotate.
pub fn build_graph(
    o: &Ontology,
    reasoner: &Reasoner,
    taxonomy: &Taxonomy,
    window: &DetailWindow,
) -> Result<OntoGraph, GraphError> {
    let exprs = harvest_expressions(o);
    let scaffold = build_scaffold(taxonomy);
    let g = place_expressions(scaffold, reasoner, &exprs, window)?;
    Ok(attach_annotations(g, o, reasoner))
}
