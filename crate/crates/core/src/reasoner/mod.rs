//! Classification of the ontology.
//!
//! The reasoner saturates EL completion rules. It is complete for
//! subsumption between expressions built from atoms, `Thing`, `Nothing`,
//! `and` and `some` (with role hierarchies, transitive roles and ranges) and
//! conservative for everything else: `or`, `not`, `only` and cardinality
//! restrictions are opaque surrogates, so reported subsumptions are always
//! entailed but some entailments involving them are missed.
//!
//! Class assertions, inverse and functional roles do not take part in
//! reasoning.

mod normalize;
mod saturation;
mod taxonomy;

use std::collections::BTreeSet;

use crate::expr::ClassExpression as CE;
use crate::iri::Iri;
use crate::ontology::{Ontology, Signature};

pub use normalize::{normalize, Atom, AtomKind, Role, Rule, RuleSet};
pub use taxonomy::{representative, Neighbors, Taxonomy, TaxonomyNode};
pub(crate) use taxonomy::direct_neighbors_among;

use saturation::Saturation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReasonerError {
    #[error("the ontology is inconsistent (owl:Thing is unsatisfiable)")]
    Inconsistent,
    #[error("unknown IRI {0}")]
    UnknownIri(Iri),
}

#[derive(Debug, Clone)]
pub struct Reasoner {
    rules: RuleSet,
    state: Saturation,
    signature: Signature,
}

impl Reasoner {
    /// Saturates the ontology. Every anonymous class expression occurring at
    /// axiom level gets a fully defined internal name, so subsumption tests
    /// between them and named classes are lookups.
    pub fn classify(o: &Ontology) -> Result<Reasoner, ReasonerError> {
        let mut rules = normalize(o);
        for ax in &o.axioms {
            for ce in ax.canonical().class_expressions() {
                rules.define(ce);
            }
        }
        let mut state = Saturation::default();
        state.sync(&rules);
        let reasoner = Reasoner {
            rules,
            state,
            signature: o.signature(),
        };
        if reasoner.state.is_unsatisfiable(normalize::TOP) {
            return Err(ReasonerError::Inconsistent);
        }
        Ok(reasoner)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn rules(&self) -> &RuleSet {
        &self.rules
    }

    fn check(&self, ce: &CE) -> Result<(), ReasonerError> {
        self.signature
            .contains_class_expression(ce)
            .map_err(ReasonerError::UnknownIri)
    }

    /// Defines additional expressions (incrementally re-saturating) so that
    /// later subsumption tests involving them are lookups.
    pub fn register<'a>(
        &mut self,
        exprs: impl IntoIterator<Item = &'a CE>,
    ) -> Result<(), ReasonerError> {
        for ce in exprs {
            self.check(ce)?;
            self.rules.define(&ce.canonical());
        }
        self.state.sync(&self.rules);
        Ok(())
    }

    /// A copy of this reasoner with `exprs` registered.
    pub fn extended<'a>(
        &self,
        exprs: impl IntoIterator<Item = &'a CE>,
    ) -> Result<Reasoner, ReasonerError> {
        let mut r = self.clone();
        r.register(exprs)?;
        Ok(r)
    }

    pub fn is_registered(&self, ce: &CE) -> bool {
        self.rules.defined_atom(&ce.canonical()).is_some()
    }

    /// `sub ⊑ sup` under the fragment semantics. Unregistered expressions are
    /// handled on a temporary extension of the saturation.
    pub fn is_subsumed(&self, sub: &CE, sup: &CE) -> Result<bool, ReasonerError> {
        self.check(sub)?;
        self.check(sup)?;
        let (sub, sup) = (sub.canonical(), sup.canonical());
        match (self.rules.defined_atom(&sub), self.rules.defined_atom(&sup)) {
            (Some(a), Some(b)) => Ok(self.atoms_subsumed(a, b)),
            _ => self.extended([&sub, &sup])?.is_subsumed(&sub, &sup),
        }
    }

    /// Subsumption test between registered expressions; `None` if either is unregistered.
    pub fn subsumed_registered(&self, sub: &CE, sup: &CE) -> Option<bool> {
        let a = self.rules.defined_atom(sub)?;
        let b = self.rules.defined_atom(sup)?;
        Some(self.atoms_subsumed(a, b))
    }

    pub(crate) fn atoms_subsumed(&self, a: Atom, b: Atom) -> bool {
        a == b || b == normalize::TOP || {
            let subs = self.state.subsumers(a);
            subs.contains(&b) || subs.contains(&normalize::BOTTOM)
        }
    }

    pub fn is_satisfiable(&self, ce: &CE) -> Result<bool, ReasonerError> {
        self.is_subsumed(ce, &CE::Nothing).map(|b| !b)
    }

    /// All subsumptions `A ⊑ B` between named classes (including Thing and Nothing).
    pub fn named_subsumptions(&self) -> BTreeSet<(CE, CE)> {
        let mut named: Vec<CE> = self
            .signature
            .classes
            .iter()
            .map(|c| CE::Atomic(c.clone()))
            .collect();
        named.push(CE::Thing);
        named.push(CE::Nothing);
        let mut out = BTreeSet::new();
        for a in &named {
            for b in &named {
                if self.subsumed_registered(a, b) == Some(true) {
                    out.insert((a.clone(), b.clone()));
                }
            }
        }
        out
    }

    /// Named-class taxonomy.
    pub fn taxonomy(&self) -> Taxonomy {
        let named = self
            .signature
            .classes
            .iter()
            .map(|c| CE::Atomic(c.clone()));
        Taxonomy::build(self, named)
    }

    /// Pairs whose conjunction the saturation derives unsatisfiable.
    pub fn unsatisfiable_pairs(&self, pairs: &[(CE, CE)]) -> Result<Vec<bool>, ReasonerError> {
        let conjunctions: Vec<CE> = pairs
            .iter()
            .map(|(a, b)| CE::and([a.clone(), b.clone()]))
            .collect();
        let ext = self.extended(conjunctions.iter())?;
        Ok(conjunctions
            .iter()
            .map(|c| ext.subsumed_registered(c, &CE::Nothing).unwrap_or(false))
            .collect())
    }

    /// Statistics: atoms, rules and role links of the saturation.
    pub fn stats(&self) -> (usize, usize, usize) {
        (
            self.rules.atom_count(),
            self.rules.rules.len(),
            self.state.links(),
        )
    }
}

/// Classifies `o` and returns the reasoner with its named-class taxonomy.
pub fn classify(o: &Ontology) -> Result<(Reasoner, Taxonomy), ReasonerError> {
    let reasoner = Reasoner::classify(o)?;
    let taxonomy = reasoner.taxonomy();
    Ok((reasoner, taxonomy))
}
