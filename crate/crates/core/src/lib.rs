//! Engine for browsing the inferred class hierarchy of an OWL ontology.
//!
//! The pipeline is: [`parser::parse_document`] → [`reasoner::Reasoner::classify`]
//! → [`graph::build_graph`] → [`layout`] → [`view`]. Relevance scoring for
//! summaries and expansion policies lives in [`relevance`].

pub mod engine;
pub mod expr;
pub mod graph;
pub mod iri;
pub mod layout;
pub mod ontology;
pub mod parser;
pub mod reasoner;
pub mod relevance;
pub mod synthetic;
pub mod view;

pub use expr::ClassExpression;
pub use iri::{Iri, PrefixTable};
pub use ontology::{Axiom, Ontology};
