//! Translation of axioms into EL normal-form rules.
//!
//! Every class expression that needs a name gets an internal atom; the atom
//! table keeps the expression so the mapping stays invertible. Expressions
//! outside the EL fragment (`or`, `not`, `only`, cardinalities) become opaque
//! surrogate atoms. A disjunction surrogate additionally gets one told rule
//! per operand (`operand ⊑ surrogate`), which is sound for its subsumers.

use std::collections::{BTreeSet, HashMap};

use crate::expr::ClassExpression as CE;
use crate::iri::Iri;
use crate::ontology::{Axiom, Characteristic, Ontology, PropertyRange};

pub type Atom = u32;
pub type Role = u32;

pub const TOP: Atom = 0;
pub const BOTTOM: Atom = 1;

/// A normal-form rule over atoms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// `A ⊑ B`
    Sub(Atom, Atom),
    /// `A₁ ⊓ … ⊓ Aₙ ⊑ B`
    Conj(Vec<Atom>, Atom),
    /// `A ⊑ ∃r.B`
    ExistsRight(Atom, Role, Atom),
    /// `∃r.A ⊑ B`
    ExistsLeft(Role, Atom, Atom),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomKind {
    Top,
    Bottom,
    Named,
    /// Internal name for a complex EL expression.
    Internal,
    /// Opaque stand-in for a non-EL expression.
    Surrogate,
}

#[derive(Debug, Clone)]
struct AtomInfo {
    expr: CE,
    kind: AtomKind,
    /// `E ⊑ atom` has been encoded.
    lower: bool,
    /// `atom ⊑ E` has been encoded.
    upper: bool,
}

/// Role hierarchy and role characteristics relevant to EL saturation.
#[derive(Debug, Clone, Default)]
pub struct RoleBox {
    pub names: Vec<Iri>,
    index: HashMap<Iri, Role>,
    /// Reflexive-transitive super roles.
    pub supers: Vec<Vec<Role>>,
    pub transitive: Vec<bool>,
    told_ranges: Vec<Vec<CE>>,
}

impl RoleBox {
    pub fn role(&mut self, iri: &Iri) -> Role {
        if let Some(&r) = self.index.get(iri) {
            return r;
        }
        let r = self.names.len() as Role;
        self.names.push(iri.clone());
        self.index.insert(iri.clone(), r);
        self.supers.push(vec![r]);
        self.transitive.push(false);
        self.told_ranges.push(Vec::new());
        r
    }

    pub fn get(&self, iri: &Iri) -> Option<Role> {
        self.index.get(iri).copied()
    }

    /// Ranges of `r` and of all its super roles.
    pub fn ranges(&self, r: Role) -> Vec<CE> {
        let mut out = BTreeSet::new();
        for &s in &self.supers[r as usize] {
            out.extend(self.told_ranges[s as usize].iter().cloned());
        }
        out.into_iter().collect()
    }

    fn close(&mut self, told: &[(Role, Role)]) {
        let n = self.names.len();
        for r in 0..n {
            let mut seen = BTreeSet::from([r as Role]);
            let mut stack = vec![r as Role];
            while let Some(x) = stack.pop() {
                for &(sub, sup) in told {
                    if sub == x && seen.insert(sup) {
                        stack.push(sup);
                    }
                }
            }
            self.supers[r] = seen.into_iter().collect();
        }
    }
}

/// Output of normalization: the atom table, role box and rule list.
#[derive(Debug, Clone)]
pub struct RuleSet {
    atoms: Vec<AtomInfo>,
    index: HashMap<CE, Atom>,
    pub roles: RoleBox,
    pub rules: Vec<Rule>,
}

impl RuleSet {
    fn new() -> Self {
        let mut rs = RuleSet {
            atoms: Vec::new(),
            index: HashMap::new(),
            roles: RoleBox::default(),
            rules: Vec::new(),
        };
        rs.intern(CE::Thing, AtomKind::Top);
        rs.intern(CE::Nothing, AtomKind::Bottom);
        rs
    }

    fn intern(&mut self, expr: CE, kind: AtomKind) -> Atom {
        if let Some(&a) = self.index.get(&expr) {
            return a;
        }
        let a = self.atoms.len() as Atom;
        let trivial = !matches!(kind, AtomKind::Internal);
        self.atoms.push(AtomInfo {
            expr: expr.clone(),
            kind,
            lower: trivial,
            upper: trivial,
        });
        self.index.insert(expr, a);
        a
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn expression(&self, a: Atom) -> &CE {
        &self.atoms[a as usize].expr
    }

    pub fn kind(&self, a: Atom) -> AtomKind {
        self.atoms[a as usize].kind
    }

    pub fn atom_of(&self, ce: &CE) -> Option<Atom> {
        self.index.get(ce).copied()
    }

    /// Atom fully equivalent to `ce`, if one has been defined.
    pub fn defined_atom(&self, ce: &CE) -> Option<Atom> {
        self.atom_of(ce)
            .filter(|&a| self.atoms[a as usize].lower && self.atoms[a as usize].upper)
    }

    fn push(&mut self, rule: Rule) {
        self.rules.push(rule);
    }

    /// Atom `X` with `ce ⊑ X` encoded.
    fn lower(&mut self, ce: &CE) -> Atom {
        match ce {
            CE::Thing => TOP,
            CE::Nothing => BOTTOM,
            CE::Atomic(_) => self.intern(ce.clone(), AtomKind::Named),
            CE::And(_) | CE::Exists(..) => {
                let a = self.intern(ce.clone(), AtomKind::Internal);
                if !self.atoms[a as usize].lower {
                    self.atoms[a as usize].lower = true;
                    self.encode_sub(ce, a);
                }
                a
            }
            _ => self.surrogate(ce),
        }
    }

    /// Atom equivalent to `ce`: both `ce ⊑ X` and `X ⊑ ce` encoded.
    pub(crate) fn define(&mut self, ce: &CE) -> Atom {
        let a = self.lower(ce);
        if !self.atoms[a as usize].upper {
            self.atoms[a as usize].upper = true;
            self.encode_super(a, ce);
        }
        a
    }

    fn surrogate(&mut self, ce: &CE) -> Atom {
        let fresh = self.atom_of(ce).is_none();
        let s = self.intern(ce.clone(), AtomKind::Surrogate);
        if fresh {
            if let CE::Or(ops) = ce {
                for op in ops {
                    let lower = self.lower(op);
                    self.push(Rule::Sub(lower, s));
                }
            }
        }
        s
    }

    /// Encodes `ce ⊑ target` for an atom target.
    fn encode_sub(&mut self, ce: &CE, target: Atom) {
        match ce {
            CE::And(ops) => {
                let mut lhs: Vec<Atom> = ops.iter().map(|op| self.lower(op)).collect();
                lhs.sort_unstable();
                lhs.dedup();
                self.push(Rule::Conj(lhs, target));
            }
            CE::Exists(r, filler) => {
                let role = self.roles.role(r);
                let f = self.lower(filler);
                self.push(Rule::ExistsLeft(role, f, target));
            }
            _ => {
                let a = self.lower(ce);
                self.push(Rule::Sub(a, target));
            }
        }
    }

    /// Encodes `atom ⊑ ce`.
    fn encode_super(&mut self, atom: Atom, ce: &CE) {
        match ce {
            CE::Thing => {}
            CE::And(ops) => {
                for op in ops {
                    self.encode_super(atom, op);
                }
            }
            CE::Exists(r, filler) => {
                let role = self.roles.role(r);
                let f = self.filler(role, filler);
                self.push(Rule::ExistsRight(atom, role, f));
            }
            CE::Nothing | CE::Atomic(_) => {
                let b = self.lower(ce);
                self.push(Rule::Sub(atom, b));
            }
            _ => {
                let s = self.surrogate(ce);
                self.push(Rule::Sub(atom, s));
            }
        }
    }

    /// Successor atom for `∃role.filler` on the right: the filler conjoined
    /// with every range of the role, fully defined.
    fn filler(&mut self, role: Role, filler: &CE) -> Atom {
        let ranges = self.roles.ranges(role);
        let ce = if ranges.is_empty() {
            filler.clone()
        } else {
            CE::and(std::iter::once(filler.clone()).chain(ranges))
        };
        self.define(&ce)
    }

    /// Encodes `sub ⊑ sup`.
    pub(crate) fn subclass(&mut self, sub: &CE, sup: &CE) {
        match sup {
            CE::Thing => {}
            CE::And(ops) => {
                for op in ops {
                    self.subclass(sub, op);
                }
            }
            CE::Exists(..) => {
                let a = self.lower(sub);
                self.encode_super(a, sup);
            }
            _ => {
                let b = match sup {
                    CE::Nothing | CE::Atomic(_) => self.lower(sup),
                    _ => self.surrogate(sup),
                };
                self.encode_sub(sub, b);
            }
        }
    }
}

/// Normalizes the TBox of `o` into rules. Only the expressions needed for the
/// axioms are named, with the polarity they occur in.
pub fn normalize(o: &Ontology) -> RuleSet {
    let mut rs = RuleSet::new();
    let axioms: Vec<Axiom> = o.axioms.iter().map(Axiom::canonical).collect();

    let mut told_sub_roles = Vec::new();
    for ax in &axioms {
        match ax {
            Axiom::SubPropertyOf { sub, sup } => {
                let (a, b) = (rs.roles.role(sub), rs.roles.role(sup));
                told_sub_roles.push((a, b));
            }
            Axiom::PropertyCharacteristic {
                property,
                kind: Characteristic::Transitive,
            } => {
                let r = rs.roles.role(property);
                rs.roles.transitive[r as usize] = true;
            }
            Axiom::PropertyRange {
                property,
                data: false,
                range: PropertyRange::Class(c),
            } => {
                let r = rs.roles.role(property);
                if *c != CE::Thing {
                    rs.roles.told_ranges[r as usize].push(c.clone());
                }
            }
            _ => {}
        }
    }
    rs.roles.close(&told_sub_roles);

    for class in o.signature().classes {
        rs.intern(CE::Atomic(class), AtomKind::Named);
    }

    for ax in &axioms {
        match ax {
            Axiom::SubClassOf { sub, sup } => rs.subclass(sub, sup),
            Axiom::EquivalentClasses(ms) => {
                for m in &ms[1..] {
                    rs.subclass(&ms[0], m);
                    rs.subclass(m, &ms[0]);
                }
            }
            Axiom::DisjointClasses(ms) => {
                for (i, a) in ms.iter().enumerate() {
                    for b in &ms[i + 1..] {
                        rs.subclass(&CE::and([a.clone(), b.clone()]), &CE::Nothing);
                    }
                }
            }
            Axiom::PropertyDomain {
                property,
                data: false,
                domain,
            } => rs.subclass(&CE::some(property.clone(), CE::Thing), domain),
            _ => {}
        }
    }
    rs
}
