//! Node relevance and summaries.
//!
//! Scorers are looked up by name in a [`ScorerRegistry`]; the built-in ones
//! are `pagerank` (directed, child to parent), `rdfrank` (the same walk on
//! the undirected hierarchy) and `kce`, a key-concept score over named
//! classes mixing density, coverage and name simplicity.

mod kce;
mod pagerank;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::graph::OntoGraph;

pub use kce::{kce_scores, name_tokens};
pub use pagerank::{pagerank, pagerank_edges};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RelevanceError {
    #[error("unknown relevance method {0:?}")]
    UnknownMethod(String),
    #[error("summary size must be at least 1")]
    EmptySummary,
    #[error("a custom summary needs at least one concept")]
    NoCustomConcepts,
    #[error("unknown node id {0}")]
    UnknownNode(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RelevanceConfig {
    pub damping: f64,
    pub epsilon: f64,
    /// Density, coverage and name-simplicity weights of the KCE score.
    pub kce_weights: [f64; 3],
    /// Scores within this relative distance of the n-th score count as tied.
    pub tie_tolerance: f64,
    /// Scorer used by the relevance expansion policy.
    pub method: String,
}

impl Default for RelevanceConfig {
    fn default() -> Self {
        RelevanceConfig {
            damping: 0.85,
            epsilon: 1e-10,
            kce_weights: [0.4, 0.4, 0.2],
            tie_tolerance: 1e-9,
            method: "pagerank".into(),
        }
    }
}

pub trait Scorer: Send + Sync {
    /// One non-negative score per node.
    fn score(&self, g: &OntoGraph) -> Vec<f64>;

    /// Whether the node takes part in summaries ranked by this scorer.
    fn ranks(&self, _g: &OntoGraph, _node: usize) -> bool {
        true
    }
}

pub struct PageRank {
    pub directed: bool,
    pub damping: f64,
    pub epsilon: f64,
}

impl Scorer for PageRank {
    fn score(&self, g: &OntoGraph) -> Vec<f64> {
        pagerank(g, self.directed, self.damping, self.epsilon)
    }
}

pub struct Kce {
    pub weights: [f64; 3],
}

impl Scorer for Kce {
    fn score(&self, g: &OntoGraph) -> Vec<f64> {
        kce_scores(g, self.weights)
    }

    fn ranks(&self, g: &OntoGraph, node: usize) -> bool {
        g.node(node).kind != crate::graph::NodeKind::Anonymous
    }
}

/// Scorers by name.
#[derive(Clone)]
pub struct ScorerRegistry {
    scorers: BTreeMap<String, Arc<dyn Scorer>>,
}

impl ScorerRegistry {
    pub fn empty() -> Self {
        ScorerRegistry {
            scorers: BTreeMap::new(),
        }
    }

    pub fn with_defaults(cfg: &RelevanceConfig) -> Self {
        let mut r = Self::empty();
        r.register(
            "pagerank",
            PageRank {
                directed: true,
                damping: cfg.damping,
                epsilon: cfg.epsilon,
            },
        );
        r.register(
            "rdfrank",
            PageRank {
                directed: false,
                damping: cfg.damping,
                epsilon: cfg.epsilon,
            },
        );
        r.register("kce", Kce { weights: cfg.kce_weights });
        r
    }

    pub fn register(&mut self, name: impl Into<String>, scorer: impl Scorer + 'static) {
        self.scorers.insert(name.into(), Arc::new(scorer));
    }

    pub fn get(&self, name: &str) -> Result<&dyn Scorer, RelevanceError> {
        self.scorers
            .get(name)
            .map(|s| s.as_ref())
            .ok_or_else(|| RelevanceError::UnknownMethod(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.scorers.keys().map(String::as_str)
    }
}

impl Default for ScorerRegistry {
    fn default() -> Self {
        Self::with_defaults(&RelevanceConfig::default())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRequest {
    /// A registered scorer name, or `custom`.
    pub method: String,
    #[serde(default = "one")]
    pub n: usize,
    /// Node ids, for `custom`.
    #[serde(default)]
    pub concepts: Vec<String>,
}

fn one() -> usize {
    1
}

impl SummaryRequest {
    pub fn new(method: impl Into<String>, n: usize) -> Self {
        SummaryRequest {
            method: method.into(),
            n,
            concepts: Vec::new(),
        }
    }

    pub fn custom(concepts: impl IntoIterator<Item = String>) -> Self {
        SummaryRequest {
            method: "custom".into(),
            n: 1,
            concepts: concepts.into_iter().collect(),
        }
    }
}

/// The `n` best-scoring nodes among `candidates`, plus every node tied with
/// the n-th one, plus Thing. Thing does not count towards `n`.
pub fn top_n(g: &OntoGraph, scores: &[f64], candidates: &[usize], n: usize, tolerance: f64) -> BTreeSet<usize> {
    let mut ranked: Vec<usize> = candidates.iter().copied().filter(|&i| i != g.top()).collect();
    ranked.sort_by(|&a, &b| {
        scores[b]
            .total_cmp(&scores[a])
            .then_with(|| g.node(a).label.cmp(&g.node(b).label))
            .then_with(|| a.cmp(&b))
    });
    let mut out: BTreeSet<usize> = BTreeSet::new();
    out.insert(g.top());
    if n == 0 || ranked.is_empty() {
        return out;
    }
    if n >= ranked.len() {
        out.extend(ranked);
        return out;
    }
    let cutoff = scores[ranked[n - 1]];
    let slack = tolerance * cutoff.abs();
    out.extend(ranked.into_iter().take_while(|&i| scores[i] >= cutoff - slack));
    out
}

/// Runs a summary request. Custom summaries are the given nodes plus Thing.
pub fn summarize(
    g: &OntoGraph,
    registry: &ScorerRegistry,
    req: &SummaryRequest,
    tolerance: f64,
) -> Result<BTreeSet<usize>, RelevanceError> {
    if req.method == "custom" {
        if req.concepts.is_empty() {
            return Err(RelevanceError::NoCustomConcepts);
        }
        let mut out = BTreeSet::new();
        out.insert(g.top());
        for id in &req.concepts {
            let idx = g
                .index_of(id)
                .ok_or_else(|| RelevanceError::UnknownNode(id.clone()))?;
            out.insert(idx);
        }
        return Ok(out);
    }
    if req.n == 0 {
        return Err(RelevanceError::EmptySummary);
    }
    let scorer = registry.get(&req.method)?;
    let scores = scorer.score(g);
    let candidates: Vec<usize> = (0..g.len()).filter(|&i| scorer.ranks(g, i)).collect();
    Ok(top_n(g, &scores, &candidates, req.n, tolerance))
}
