//! Ontology model: axioms, signature and retained-but-unsupported axioms.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::expr::ClassExpression;
use crate::iri::{Iri, PrefixTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EntityKind {
    Class,
    ObjectProperty,
    DataProperty,
    AnnotationProperty,
    NamedIndividual,
    Datatype,
}

impl EntityKind {
    pub fn keyword(self) -> &'static str {
        match self {
            EntityKind::Class => "Class",
            EntityKind::ObjectProperty => "ObjectProperty",
            EntityKind::DataProperty => "DataProperty",
            EntityKind::AnnotationProperty => "AnnotationProperty",
            EntityKind::NamedIndividual => "NamedIndividual",
            EntityKind::Datatype => "Datatype",
        }
    }

    pub fn from_keyword(kw: &str) -> Option<Self> {
        Some(match kw {
            "Class" => EntityKind::Class,
            "ObjectProperty" => EntityKind::ObjectProperty,
            "DataProperty" => EntityKind::DataProperty,
            "AnnotationProperty" => EntityKind::AnnotationProperty,
            "NamedIndividual" => EntityKind::NamedIndividual,
            "Datatype" => EntityKind::Datatype,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PropertyRange {
    Class(ClassExpression),
    /// Opaque datatype name such as `xsd:string`.
    Datatype(Iri),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Characteristic {
    Functional,
    Transitive,
    InverseOf(Iri),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Axiom {
    Declaration(EntityKind, Iri),
    SubClassOf {
        sub: ClassExpression,
        sup: ClassExpression,
    },
    EquivalentClasses(Vec<ClassExpression>),
    DisjointClasses(Vec<ClassExpression>),
    PropertyDomain {
        property: Iri,
        data: bool,
        domain: ClassExpression,
    },
    PropertyRange {
        property: Iri,
        data: bool,
        range: PropertyRange,
    },
    SubPropertyOf {
        sub: Iri,
        sup: Iri,
    },
    ClassAssertion {
        individual: Iri,
        class: ClassExpression,
    },
    ObjectPropertyAssertion {
        property: Iri,
        subject: Iri,
        object: Iri,
    },
    PropertyCharacteristic {
        property: Iri,
        kind: Characteristic,
    },
    Label {
        subject: Iri,
        value: String,
        lang: Option<String>,
    },
}

impl Axiom {
    /// Functional-syntax keyword of the axiom.
    pub fn kind(&self) -> &'static str {
        match self {
            Axiom::Declaration(..) => "Declaration",
            Axiom::SubClassOf { .. } => "SubClassOf",
            Axiom::EquivalentClasses(_) => "EquivalentClasses",
            Axiom::DisjointClasses(_) => "DisjointClasses",
            Axiom::PropertyDomain { data: false, .. } => "ObjectPropertyDomain",
            Axiom::PropertyDomain { data: true, .. } => "DataPropertyDomain",
            Axiom::PropertyRange { data: false, .. } => "ObjectPropertyRange",
            Axiom::PropertyRange { data: true, .. } => "DataPropertyRange",
            Axiom::SubPropertyOf { .. } => "SubObjectPropertyOf",
            Axiom::ClassAssertion { .. } => "ClassAssertion",
            Axiom::ObjectPropertyAssertion { .. } => "ObjectPropertyAssertion",
            Axiom::PropertyCharacteristic { kind, .. } => match kind {
                Characteristic::Functional => "FunctionalObjectProperty",
                Characteristic::Transitive => "TransitiveObjectProperty",
                Characteristic::InverseOf(_) => "InverseObjectProperties",
            },
            Axiom::Label { .. } => "AnnotationAssertion",
        }
    }

    /// A subclass axiom whose left side is not a named class.
    pub fn is_gci(&self) -> bool {
        matches!(self, Axiom::SubClassOf { sub, .. } if sub.is_anonymous())
    }

    /// Canonical form: expressions canonicalized, member lists sorted.
    /// Equivalence members are deduplicated; disjointness members are not,
    /// since `DisjointClasses(A A)` makes `A` unsatisfiable.
    pub fn canonical(&self) -> Axiom {
        let members = |ms: &[ClassExpression]| {
            let set: BTreeSet<_> = ms.iter().map(ClassExpression::canonical).collect();
            set.into_iter().collect::<Vec<_>>()
        };
        match self {
            Axiom::SubClassOf { sub, sup } => Axiom::SubClassOf {
                sub: sub.canonical(),
                sup: sup.canonical(),
            },
            Axiom::EquivalentClasses(ms) => Axiom::EquivalentClasses(members(ms)),
            Axiom::DisjointClasses(ms) => {
                let mut ms: Vec<_> = ms.iter().map(ClassExpression::canonical).collect();
                ms.sort();
                Axiom::DisjointClasses(ms)
            }
            Axiom::PropertyDomain {
                property,
                data,
                domain,
            } => Axiom::PropertyDomain {
                property: property.clone(),
                data: *data,
                domain: domain.canonical(),
            },
            Axiom::PropertyRange {
                property,
                data,
                range: PropertyRange::Class(c),
            } => Axiom::PropertyRange {
                property: property.clone(),
                data: *data,
                range: PropertyRange::Class(c.canonical()),
            },
            Axiom::ClassAssertion { individual, class } => Axiom::ClassAssertion {
                individual: individual.clone(),
                class: class.canonical(),
            },
            other => other.clone(),
        }
    }

    /// Class expressions occurring at axiom level (not nested subexpressions).
    pub fn class_expressions(&self) -> Vec<&ClassExpression> {
        match self {
            Axiom::SubClassOf { sub, sup } => vec![sub, sup],
            Axiom::EquivalentClasses(ms) | Axiom::DisjointClasses(ms) => ms.iter().collect(),
            Axiom::PropertyDomain { domain, .. } => vec![domain],
            Axiom::PropertyRange {
                range: PropertyRange::Class(c),
                ..
            } => vec![c],
            Axiom::ClassAssertion { class, .. } => vec![class],
            _ => Vec::new(),
        }
    }
}

/// An axiom the parser recognized but does not model. Kept verbatim so it
/// is never lost; each one corresponds to a skip record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpaqueAxiom {
    pub kind: String,
    pub line: usize,
    pub column: usize,
    pub text: String,
}

impl OpaqueAxiom {
    /// `SKIP <axiom-kind> <line>:<col>`
    pub fn skip_record(&self) -> String {
        format!("SKIP {} {}:{}", self.kind, self.line, self.column)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    pub classes: BTreeSet<Iri>,
    pub object_properties: BTreeSet<Iri>,
    pub data_properties: BTreeSet<Iri>,
    pub individuals: BTreeSet<Iri>,
}

impl Signature {
    pub fn contains_class_expression(&self, ce: &ClassExpression) -> Result<(), Iri> {
        let mut classes = BTreeSet::new();
        ce.classes_in(&mut classes);
        if let Some(c) = classes.into_iter().find(|c| !self.classes.contains(c)) {
            return Err(c);
        }
        let mut roles = BTreeSet::new();
        ce.roles_in(&mut roles);
        if let Some(r) = roles.into_iter().find(|r| !self.object_properties.contains(r)) {
            return Err(r);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Ontology {
    pub iri: Option<Iri>,
    pub version_iri: Option<Iri>,
    pub prefixes: PrefixTable,
    pub imports: Vec<Iri>,
    pub axioms: Vec<Axiom>,
    pub opaque: Vec<OpaqueAxiom>,
}

impl Ontology {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_axioms(axioms: impl IntoIterator<Item = Axiom>) -> Self {
        Ontology {
            axioms: axioms.into_iter().collect(),
            ..Default::default()
        }
    }

    /// Canonical axiom set, used for round-trip comparisons.
    pub fn axiom_set(&self) -> BTreeSet<Axiom> {
        self.axioms.iter().map(Axiom::canonical).collect()
    }

    /// Entities referenced or declared anywhere in the axioms.
    pub fn signature(&self) -> Signature {
        let mut sig = Signature::default();
        let add_expr = |sig: &mut Signature, ce: &ClassExpression| {
            ce.classes_in(&mut sig.classes);
            ce.roles_in(&mut sig.object_properties);
        };
        for ax in &self.axioms {
            match ax {
                Axiom::Declaration(kind, iri) => match kind {
                    EntityKind::Class => {
                        if let ClassExpression::Atomic(iri) = ClassExpression::atomic(iri.clone()) {
                            sig.classes.insert(iri);
                        }
                    }
                    EntityKind::ObjectProperty => {
                        sig.object_properties.insert(iri.clone());
                    }
                    EntityKind::DataProperty => {
                        sig.data_properties.insert(iri.clone());
                    }
                    EntityKind::NamedIndividual => {
                        sig.individuals.insert(iri.clone());
                    }
                    EntityKind::AnnotationProperty | EntityKind::Datatype => {}
                },
                Axiom::PropertyDomain { property, data, .. }
                | Axiom::PropertyRange { property, data, .. } => {
                    if *data {
                        sig.data_properties.insert(property.clone());
                    } else {
                        sig.object_properties.insert(property.clone());
                    }
                }
                Axiom::SubPropertyOf { sub, sup } => {
                    sig.object_properties.insert(sub.clone());
                    sig.object_properties.insert(sup.clone());
                }
                Axiom::ClassAssertion { individual, .. } => {
                    sig.individuals.insert(individual.clone());
                }
                Axiom::ObjectPropertyAssertion {
                    property,
                    subject,
                    object,
                } => {
                    sig.object_properties.insert(property.clone());
                    sig.individuals.insert(subject.clone());
                    sig.individuals.insert(object.clone());
                }
                Axiom::PropertyCharacteristic { property, kind } => {
                    sig.object_properties.insert(property.clone());
                    if let Characteristic::InverseOf(other) = kind {
                        sig.object_properties.insert(other.clone());
                    }
                }
                _ => {}
            }
            for ce in ax.class_expressions() {
                add_expr(&mut sig, ce);
            }
        }
        sig
    }

    pub fn labels_of(&self, subject: &Iri) -> Vec<&str> {
        self.axioms
            .iter()
            .filter_map(|ax| match ax {
                Axiom::Label { subject: s, value, .. } if s == subject => Some(value.as_str()),
                _ => None,
            })
            .collect()
    }

    pub fn gci_count(&self) -> usize {
        self.axioms.iter().filter(|a| a.is_gci()).count()
    }

    /// Lines of the skip side-channel log.
    pub fn skip_log(&self) -> String {
        let mut out = String::new();
        for op in &self.opaque {
            out.push_str(&op.skip_record());
            out.push('\n');
        }
        out
    }
}
