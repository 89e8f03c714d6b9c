//! Equivalence classes and the direct-subsumption DAG.

use std::collections::{BTreeSet, HashMap};

use crate::expr::ClassExpression as CE;

use super::normalize::{Atom, BOTTOM};
use super::{Reasoner, ReasonerError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaxonomyNode {
    /// Sorted, canonical members of the equivalence class.
    pub members: Vec<CE>,
    pub representative: CE,
}

/// Nodes are equivalence classes; `parents`/`children` hold the transitively
/// reduced direct-subsumption relation. Node 0 is Thing and node 1 is Nothing.
#[derive(Debug, Clone)]
pub struct Taxonomy {
    pub nodes: Vec<TaxonomyNode>,
    pub parents: Vec<Vec<usize>>,
    pub children: Vec<Vec<usize>>,
    index: HashMap<CE, usize>,
}

/// Placement of an expression relative to a set of nodes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Neighbors {
    pub supers: Vec<usize>,
    pub subs: Vec<usize>,
    pub equivalent: Option<usize>,
}

/// Representative of an equivalence class: Thing/Nothing if present, else the
/// atomic member with the smallest local name, else the anonymous member with
/// the smallest rendering.
pub fn representative(members: &[CE]) -> CE {
    if members.contains(&CE::Thing) {
        return CE::Thing;
    }
    if members.contains(&CE::Nothing) {
        return CE::Nothing;
    }
    let atomic = members
        .iter()
        .filter_map(|m| m.as_atomic().map(|iri| (iri.local_name(), iri.as_str(), m)))
        .min();
    if let Some((_, _, m)) = atomic {
        return m.clone();
    }
    members
        .iter()
        .min_by_key(|m| (m.render(), m.to_functional()))
        .cloned()
        .expect("equivalence class is never empty")
}

impl Taxonomy {
    pub const TOP: usize = 0;
    pub const BOTTOM: usize = 1;

    /// Classifies `members` (plus Thing and Nothing) using the reasoner's
    /// saturation. Every member must be registered with the reasoner.
    pub fn build(reasoner: &Reasoner, members: impl IntoIterator<Item = CE>) -> Taxonomy {
        let mut list: Vec<CE> = vec![CE::Thing, CE::Nothing];
        let mut seen: BTreeSet<CE> = list.iter().cloned().collect();
        for m in members {
            let m = m.canonical();
            if seen.insert(m.clone()) {
                list.push(m);
            }
        }
        let atoms: Vec<Atom> = list
            .iter()
            .map(|m| {
                reasoner
                    .rules
                    .defined_atom(m)
                    .unwrap_or_else(|| panic!("{} is not registered", m.render()))
            })
            .collect();
        let by_atom: HashMap<Atom, usize> =
            atoms.iter().enumerate().map(|(i, &a)| (a, i)).collect();

        // Group mutually subsuming members; unsatisfiable ones join Nothing.
        let mut group_of = vec![usize::MAX; list.len()];
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for i in 0..list.len() {
            if group_of[i] != usize::MAX {
                continue;
            }
            let a = atoms[i];
            let g = groups.len();
            let mut group = vec![i];
            group_of[i] = g;
            let unsat = reasoner.state.is_unsatisfiable(a) || a == BOTTOM;
            for j in i + 1..list.len() {
                if group_of[j] != usize::MAX {
                    continue;
                }
                let b = atoms[j];
                let same = if unsat {
                    reasoner.state.is_unsatisfiable(b)
                } else {
                    reasoner.atoms_subsumed(a, b) && reasoner.atoms_subsumed(b, a)
                };
                if same {
                    group_of[j] = g;
                    group.push(j);
                }
            }
            groups.push(group);
        }
        debug_assert_eq!(group_of[0], Self::TOP);
        debug_assert_eq!(group_of[1], Self::BOTTOM);

        let n = groups.len();
        let mut strict_supers: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (g, group) in groups.iter().enumerate() {
            if g == Self::BOTTOM {
                continue;
            }
            let rep_atom = atoms[group[0]];
            let mut sups: BTreeSet<usize> = reasoner
                .state
                .subsumers(rep_atom)
                .iter()
                .filter_map(|b| by_atom.get(b))
                .map(|&j| group_of[j])
                .filter(|&h| h != g && h != Self::BOTTOM)
                .collect();
            if g != Self::TOP {
                sups.insert(Self::TOP);
            }
            strict_supers[g] = sups;
        }

        let mut parents = vec![Vec::new(); n];
        let mut children = vec![Vec::new(); n];
        for g in 0..n {
            if g == Self::BOTTOM {
                continue;
            }
            for &p in &strict_supers[g] {
                let implied = strict_supers[g]
                    .iter()
                    .any(|&q| q != p && strict_supers[q].contains(&p));
                if !implied {
                    parents[g].push(p);
                    children[p].push(g);
                }
            }
        }
        let leaves: Vec<usize> = (0..n)
            .filter(|&g| g != Self::BOTTOM && children[g].is_empty())
            .collect();
        for leaf in leaves {
            parents[Self::BOTTOM].push(leaf);
            children[leaf].push(Self::BOTTOM);
        }

        let mut index = HashMap::new();
        let nodes = groups
            .iter()
            .enumerate()
            .map(|(g, group)| {
                let mut members: Vec<CE> = group.iter().map(|&i| list[i].clone()).collect();
                members.sort();
                for m in &members {
                    index.insert(m.clone(), g);
                }
                TaxonomyNode {
                    representative: representative(&members),
                    members,
                }
            })
            .collect();
        Taxonomy {
            nodes,
            parents,
            children,
            index,
        }
    }

    pub fn node_of(&self, ce: &CE) -> Option<usize> {
        self.index.get(&ce.canonical()).copied()
    }

    pub fn top(&self) -> usize {
        Self::TOP
    }

    pub fn bottom(&self) -> usize {
        Self::BOTTOM
    }

    /// Direct edges as (child, parent) pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (c, ps) in self.parents.iter().enumerate() {
            for &p in ps {
                out.push((c, p));
            }
        }
        out
    }

    /// Where `ce` would sit among the taxonomy's nodes.
    pub fn direct_neighbors(&self, reasoner: &Reasoner, ce: &CE) -> Result<Neighbors, ReasonerError> {
        let ce = ce.canonical();
        let reps: Vec<&CE> = self.nodes.iter().map(|n| &n.representative).collect();
        let ext;
        let r = if reasoner.is_registered(&ce) {
            reasoner
        } else {
            ext = reasoner.extended([&ce])?;
            &ext
        };
        let mut nb = direct_neighbors_among(r, &ce, &reps);
        if let Some(eq) = nb.equivalent {
            nb.supers = self.parents[eq].clone();
            nb.subs = self.children[eq].clone();
        }
        Ok(nb)
    }
}

/// Equivalent node, minimal strict subsumers and maximal strict subsumees of
/// `ce` among `candidates`. `ce` and all candidates must be registered.
pub(crate) fn direct_neighbors_among(reasoner: &Reasoner, ce: &CE, candidates: &[&CE]) -> Neighbors {
    let atom = |c: &CE| {
        reasoner
            .rules
            .defined_atom(c)
            .unwrap_or_else(|| panic!("{} is not registered", c.render()))
    };
    let a = atom(ce);
    let cand_atoms: Vec<Atom> = candidates.iter().map(|c| atom(c)).collect();
    let mut above = Vec::new();
    let mut below = Vec::new();
    for (i, &b) in cand_atoms.iter().enumerate() {
        let up = reasoner.atoms_subsumed(a, b);
        let down = reasoner.atoms_subsumed(b, a);
        match (up, down) {
            (true, true) => {
                return Neighbors {
                    equivalent: Some(i),
                    ..Default::default()
                }
            }
            (true, false) => above.push(i),
            (false, true) => below.push(i),
            _ => {}
        }
    }
    let supers = above
        .iter()
        .copied()
        .filter(|&i| {
            !above
                .iter()
                .any(|&j| j != i && reasoner.atoms_subsumed(cand_atoms[j], cand_atoms[i]))
        })
        .collect();
    let subs = below
        .iter()
        .copied()
        .filter(|&i| {
            !below
                .iter()
                .any(|&j| j != i && reasoner.atoms_subsumed(cand_atoms[i], cand_atoms[j]))
        })
        .collect();
    Neighbors {
        supers,
        subs,
        equivalent: None,
    }
}
