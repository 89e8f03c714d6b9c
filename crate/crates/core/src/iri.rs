//! IRIs and prefix tables.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
pub const XML: &str = "http://www.w3.org/XML/1998/namespace";

/// An absolute IRI. Cheap to clone.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Iri(Arc<str>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IriError {
    #[error("empty IRI")]
    Empty,
    #[error("IRI `{0}` has no scheme")]
    NoScheme(String),
    #[error("IRI `{0}` contains forbidden character {1:?}")]
    BadChar(String, char),
}

impl Iri {
    pub fn new(value: impl AsRef<str>) -> Result<Self, IriError> {
        let value = value.as_ref();
        if value.is_empty() {
            return Err(IriError::Empty);
        }
        if let Some(c) = value
            .chars()
            .find(|c| c.is_whitespace() || c.is_control() || "<>\"{}|^`\\".contains(*c))
        {
            return Err(IriError::BadChar(value.to_string(), c));
        }
        if !has_scheme(value) {
            return Err(IriError::NoScheme(value.to_string()));
        }
        Ok(Iri(Arc::from(value)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The fragment after `#`, or else the last path segment.
    pub fn local_name(&self) -> &str {
        local_name(&self.0)
    }

    pub fn owl_thing() -> Self {
        Iri(Arc::from(format!("{OWL}Thing")))
    }

    pub fn owl_nothing() -> Self {
        Iri(Arc::from(format!("{OWL}Nothing")))
    }

    pub fn rdfs_label() -> Self {
        Iri(Arc::from(format!("{RDFS}label")))
    }

    /// Short form using the well-known W3C prefixes, e.g. `xsd:string`.
    pub fn compact(&self) -> String {
        for (prefix, ns) in [("owl", OWL), ("rdf", RDF), ("rdfs", RDFS), ("xsd", XSD)] {
            if let Some(rest) = self.0.strip_prefix(ns) {
                return format!("{prefix}:{rest}");
            }
        }
        self.local_name().to_string()
    }
}

fn has_scheme(value: &str) -> bool {
    let Some(colon) = value.find(':') else {
        return false;
    };
    let scheme = &value[..colon];
    let mut chars = scheme.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || "+-.".contains(c))
}

pub fn local_name(iri: &str) -> &str {
    if let Some(pos) = iri.rfind('#') {
        if pos + 1 < iri.len() {
            return &iri[pos + 1..];
        }
    }
    let trimmed = iri.trim_end_matches(['/', '#']);
    match trimmed.rfind(['/', ':']) {
        Some(pos) if pos + 1 < trimmed.len() => &trimmed[pos + 1..],
        _ => trimmed,
    }
}

impl TryFrom<String> for Iri {
    type Error = IriError;
    fn try_from(value: String) -> Result<Self, Self::Error> {
        Iri::new(value)
    }
}

impl From<Iri> for String {
    fn from(iri: Iri) -> Self {
        iri.0.to_string()
    }
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Prefix name to namespace mapping. The empty string is the default prefix (`:`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixTable {
    mappings: BTreeMap<String, String>,
}

impl Default for PrefixTable {
    fn default() -> Self {
        let mut mappings = BTreeMap::new();
        for (p, ns) in [("owl", OWL), ("rdf", RDF), ("rdfs", RDFS), ("xsd", XSD), ("xml", XML)] {
            mappings.insert(p.to_string(), ns.to_string());
        }
        PrefixTable { mappings }
    }
}

impl PrefixTable {
    pub fn empty() -> Self {
        PrefixTable {
            mappings: BTreeMap::new(),
        }
    }

    /// Registers a prefix, returning the namespace it replaced.
    pub fn insert(&mut self, prefix: impl Into<String>, namespace: impl Into<String>) -> Option<String> {
        self.mappings.insert(prefix.into(), namespace.into())
    }

    pub fn get(&self, prefix: &str) -> Option<&str> {
        self.mappings.get(prefix).map(String::as_str)
    }

    pub fn expand(&self, prefix: &str, local: &str) -> Option<Result<Iri, IriError>> {
        self.get(prefix).map(|ns| Iri::new(format!("{ns}{local}")))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.mappings.iter().map(|(p, n)| (p.as_str(), n.as_str()))
    }

    /// Whether the table only holds the predefined W3C prefixes.
    pub fn is_standard(&self) -> bool {
        *self == PrefixTable::default()
    }
}
