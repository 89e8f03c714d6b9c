//! Class expressions.
//!
//! Expressions are kept in a canonical form: conjunction and disjunction
//! operands are flattened, sorted and deduplicated, so that structural
//! equality coincides with equality up to commutativity, associativity and
//! idempotence of `and`/`or`. Use the constructors on [`ClassExpression`]
//! (or [`ClassExpression::canonical`]) to keep that invariant.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::iri::Iri;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassExpression {
    Thing,
    Nothing,
    Atomic(Iri),
    And(Vec<ClassExpression>),
    Or(Vec<ClassExpression>),
    Not(Box<ClassExpression>),
    Exists(Iri, Box<ClassExpression>),
    ForAll(Iri, Box<ClassExpression>),
    MinCard(u32, Iri, Box<ClassExpression>),
    MaxCard(u32, Iri, Box<ClassExpression>),
    ExactCard(u32, Iri, Box<ClassExpression>),
}

use ClassExpression as CE;

impl ClassExpression {
    /// Atomic class; `owl:Thing` and `owl:Nothing` map to the dedicated variants.
    pub fn atomic(iri: Iri) -> Self {
        if iri == Iri::owl_thing() {
            CE::Thing
        } else if iri == Iri::owl_nothing() {
            CE::Nothing
        } else {
            CE::Atomic(iri)
        }
    }

    pub fn and(operands: impl IntoIterator<Item = ClassExpression>) -> Self {
        Self::nary(operands, true)
    }

    pub fn or(operands: impl IntoIterator<Item = ClassExpression>) -> Self {
        Self::nary(operands, false)
    }

    fn nary(operands: impl IntoIterator<Item = ClassExpression>, conj: bool) -> Self {
        let mut set = BTreeSet::new();
        for op in operands {
            match (op, conj) {
                (CE::And(inner), true) | (CE::Or(inner), false) => set.extend(inner),
                (op, _) => {
                    set.insert(op);
                }
            }
        }
        let mut ops: Vec<_> = set.into_iter().collect();
        match ops.len() {
            // Empty conjunction is Thing, empty disjunction is Nothing.
            0 if conj => CE::Thing,
            0 => CE::Nothing,
            1 => ops.pop().unwrap(),
            _ if conj => CE::And(ops),
            _ => CE::Or(ops),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(operand: ClassExpression) -> Self {
        CE::Not(Box::new(operand))
    }

    pub fn some(role: Iri, filler: ClassExpression) -> Self {
        CE::Exists(role, Box::new(filler))
    }

    pub fn only(role: Iri, filler: ClassExpression) -> Self {
        CE::ForAll(role, Box::new(filler))
    }

    /// Rebuilds the expression bottom-up through the canonicalizing constructors.
    pub fn canonical(&self) -> Self {
        match self {
            CE::Thing | CE::Nothing => self.clone(),
            CE::Atomic(iri) => CE::atomic(iri.clone()),
            CE::And(ops) => CE::and(ops.iter().map(CE::canonical)),
            CE::Or(ops) => CE::or(ops.iter().map(CE::canonical)),
            CE::Not(op) => CE::not(op.canonical()),
            CE::Exists(r, f) => CE::some(r.clone(), f.canonical()),
            CE::ForAll(r, f) => CE::only(r.clone(), f.canonical()),
            CE::MinCard(n, r, f) => CE::MinCard(*n, r.clone(), Box::new(f.canonical())),
            CE::MaxCard(n, r, f) => CE::MaxCard(*n, r.clone(), Box::new(f.canonical())),
            CE::ExactCard(n, r, f) => CE::ExactCard(*n, r.clone(), Box::new(f.canonical())),
        }
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, CE::Atomic(_))
    }

    /// Named classes, `Thing` and `Nothing` are not anonymous.
    pub fn is_anonymous(&self) -> bool {
        !matches!(self, CE::Atomic(_) | CE::Thing | CE::Nothing)
    }

    pub fn as_atomic(&self) -> Option<&Iri> {
        match self {
            CE::Atomic(iri) => Some(iri),
            _ => None,
        }
    }

    /// True when the expression only uses Thing, Nothing, atoms, `and` and `some`.
    pub fn is_el(&self) -> bool {
        match self {
            CE::Thing | CE::Nothing | CE::Atomic(_) => true,
            CE::And(ops) => ops.iter().all(CE::is_el),
            CE::Exists(_, f) => f.is_el(),
            _ => false,
        }
    }

    /// Direct subexpressions.
    pub fn children(&self) -> Vec<&ClassExpression> {
        match self {
            CE::Thing | CE::Nothing | CE::Atomic(_) => Vec::new(),
            CE::And(ops) | CE::Or(ops) => ops.iter().collect(),
            CE::Not(op) => vec![op],
            CE::Exists(_, f)
            | CE::ForAll(_, f)
            | CE::MinCard(_, _, f)
            | CE::MaxCard(_, _, f)
            | CE::ExactCard(_, _, f) => vec![f],
        }
    }

    pub fn role(&self) -> Option<&Iri> {
        match self {
            CE::Exists(r, _)
            | CE::ForAll(r, _)
            | CE::MinCard(_, r, _)
            | CE::MaxCard(_, r, _)
            | CE::ExactCard(_, r, _) => Some(r),
            _ => None,
        }
    }

    pub fn classes_in(&self, out: &mut BTreeSet<Iri>) {
        if let CE::Atomic(iri) = self {
            out.insert(iri.clone());
        }
        for child in self.children() {
            child.classes_in(out);
        }
    }

    pub fn roles_in(&self, out: &mut BTreeSet<Iri>) {
        if let Some(r) = self.role() {
            out.insert(r.clone());
        }
        for child in self.children() {
            child.roles_in(out);
        }
    }

    /// Manchester-style display string using local names.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out);
        out
    }

    fn render_into(&self, out: &mut String) {
        match self {
            CE::Thing => out.push_str("Thing"),
            CE::Nothing => out.push_str("Nothing"),
            CE::Atomic(iri) => out.push_str(iri.local_name()),
            CE::And(ops) | CE::Or(ops) => {
                let sep = if matches!(self, CE::And(_)) { " and " } else { " or " };
                for (i, op) in ops.iter().enumerate() {
                    if i > 0 {
                        out.push_str(sep);
                    }
                    op.render_operand(out);
                }
            }
            CE::Not(op) => {
                out.push_str("not ");
                op.render_operand(out);
            }
            CE::Exists(r, f) => render_restriction(out, r, "some", f),
            CE::ForAll(r, f) => render_restriction(out, r, "only", f),
            CE::MinCard(n, r, f) => render_restriction(out, r, &format!("min {n}"), f),
            CE::MaxCard(n, r, f) => render_restriction(out, r, &format!("max {n}"), f),
            CE::ExactCard(n, r, f) => render_restriction(out, r, &format!("exactly {n}"), f),
        }
    }

    fn render_operand(&self, out: &mut String) {
        if self.is_anonymous() {
            out.push('(');
            self.render_into(out);
            out.push(')');
        } else {
            self.render_into(out);
        }
    }

    /// OWL functional-style syntax with full IRIs. Canonical expressions
    /// yield a canonical string, which is what stable node ids hash.
    pub fn to_functional(&self) -> String {
        let mut out = String::new();
        self.write_functional(&mut out);
        out
    }

    pub(crate) fn write_functional(&self, out: &mut String) {
        match self {
            CE::Thing => {
                let _ = write!(out, "<{}>", Iri::owl_thing());
            }
            CE::Nothing => {
                let _ = write!(out, "<{}>", Iri::owl_nothing());
            }
            CE::Atomic(iri) => {
                let _ = write!(out, "<{iri}>");
            }
            CE::And(ops) | CE::Or(ops) => {
                out.push_str(if matches!(self, CE::And(_)) {
                    "ObjectIntersectionOf("
                } else {
                    "ObjectUnionOf("
                });
                for (i, op) in ops.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    op.write_functional(out);
                }
                out.push(')');
            }
            CE::Not(op) => {
                out.push_str("ObjectComplementOf(");
                op.write_functional(out);
                out.push(')');
            }
            CE::Exists(r, f) => write_restriction(out, "ObjectSomeValuesFrom", None, r, f),
            CE::ForAll(r, f) => write_restriction(out, "ObjectAllValuesFrom", None, r, f),
            CE::MinCard(n, r, f) => write_restriction(out, "ObjectMinCardinality", Some(*n), r, f),
            CE::MaxCard(n, r, f) => write_restriction(out, "ObjectMaxCardinality", Some(*n), r, f),
            CE::ExactCard(n, r, f) => {
                write_restriction(out, "ObjectExactCardinality", Some(*n), r, f)
            }
        }
    }
}

fn render_restriction(out: &mut String, role: &Iri, keyword: &str, filler: &ClassExpression) {
    out.push_str(role.local_name());
    out.push(' ');
    out.push_str(keyword);
    out.push(' ');
    filler.render_operand(out);
}

fn write_restriction(
    out: &mut String,
    name: &str,
    card: Option<u32>,
    role: &Iri,
    filler: &ClassExpression,
) {
    out.push_str(name);
    out.push('(');
    if let Some(n) = card {
        let _ = write!(out, "{n} ");
    }
    let _ = write!(out, "<{role}> ");
    filler.write_functional(out);
    out.push(')');
}

impl fmt::Display for ClassExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
