//! Loading a document end to end: parse, classify, build, score.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::graph::{build_graph, DetailWindow, GraphError, NodeKind, OntoGraph};
use crate::layout::{assign_levels, LayoutConfig, LayoutError};
use crate::ontology::Ontology;
use crate::parser::{parse_document, ParseError};
use crate::reasoner::{Reasoner, ReasonerError, Taxonomy};
use crate::relevance::{summarize, RelevanceConfig, RelevanceError, ScorerRegistry, SummaryRequest};
use crate::view::{Change, Direction, ViewContext, ViewDefaults, ViewError, ViewState};

#[derive(Debug, thiserror::Error)]
pub enum EngineError {
    #[error("{} parse error(s); first: {}", .0.len(), .0[0])]
    Parse(Vec<ParseError>),
    #[error(transparent)]
    Reasoner(#[from] ReasonerError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error(transparent)]
    Relevance(#[from] RelevanceError),
    #[error(transparent)]
    View(#[from] ViewError),
}

/// Defaults for views, layout and relevance.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EngineConfig {
    pub view: ViewDefaults,
    pub layout: LayoutConfig,
    pub relevance: RelevanceConfig,
}

/// Wall-clock milliseconds per phase.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Timings {
    pub parse_ms: f64,
    pub classify_ms: f64,
    pub build_ms: f64,
    pub score_ms: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DocumentStats {
    pub axioms: usize,
    pub skipped_axioms: usize,
    pub classes: usize,
    pub object_properties: usize,
    pub data_properties: usize,
    pub individuals: usize,
    pub gcis: usize,
    pub harvested_expressions: usize,
    pub anonymous_nodes: usize,
    pub defined_nodes: usize,
    pub nodes: usize,
    pub isa_edges: usize,
    pub unsatisfiable: usize,
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1000.0
}

type Built = (OntoGraph, Vec<usize>, BTreeMap<String, Vec<f64>>);

fn build(
    ontology: &Ontology,
    reasoner: &Reasoner,
    taxonomy: &Taxonomy,
    registry: &ScorerRegistry,
    window: &DetailWindow,
    timings: &mut Timings,
) -> Result<Built, EngineError> {
    let t = Instant::now();
    let graph = build_graph(ontology, reasoner, taxonomy, window)?;
    let levels = assign_levels(&graph)?;
    timings.build_ms = ms(t);
    let t = Instant::now();
    let mut scores = BTreeMap::new();
    for name in registry.names() {
        scores.insert(name.to_string(), registry.get(name)?.score(&graph));
    }
    timings.score_ms = ms(t);
    Ok((graph, levels, scores))
}

/// A classified ontology with its display graph and relevance scores,
/// shared read-only by the views on it.
pub struct Document {
    pub ontology: Ontology,
    pub reasoner: Reasoner,
    pub taxonomy: Taxonomy,
    pub graph: OntoGraph,
    pub levels: Vec<usize>,
    pub scores: BTreeMap<String, Vec<f64>>,
    pub registry: ScorerRegistry,
    pub config: EngineConfig,
    pub timings: Timings,
}

impl Document {
    pub fn from_text(text: &str, config: EngineConfig) -> Result<Self, EngineError> {
        let t = Instant::now();
        let ontology = parse_document(text).map_err(EngineError::Parse)?;
        let parse_ms = ms(t);
        let mut doc = Self::from_ontology(ontology, config)?;
        doc.timings.parse_ms = parse_ms;
        Ok(doc)
    }

    pub fn from_ontology(ontology: Ontology, config: EngineConfig) -> Result<Self, EngineError> {
        Self::with_registry(ontology, config.clone(), ScorerRegistry::with_defaults(&config.relevance))
    }

    pub fn with_registry(
        ontology: Ontology,
        config: EngineConfig,
        registry: ScorerRegistry,
    ) -> Result<Self, EngineError> {
        let t = Instant::now();
        let reasoner = Reasoner::classify(&ontology)?;
        let taxonomy = reasoner.taxonomy();
        let classify_ms = ms(t);
        let mut timings = Timings {
            classify_ms,
            ..Timings::default()
        };
        let (graph, levels, scores) = build(
            &ontology,
            &reasoner,
            &taxonomy,
            &registry,
            &DetailWindow::default(),
            &mut timings,
        )?;
        Ok(Document {
            ontology,
            reasoner,
            taxonomy,
            graph,
            levels,
            scores,
            registry,
            config,
            timings,
        })
    }

    /// The same ontology shown through another detail window. The
    /// classification is reused.
    pub fn with_window(&self, window: &DetailWindow) -> Result<Document, EngineError> {
        let registry = self.registry.clone();
        let mut timings = self.timings;
        let (graph, levels, scores) = build(
            &self.ontology,
            &self.reasoner,
            &self.taxonomy,
            &registry,
            window,
            &mut timings,
        )?;
        Ok(Document {
            ontology: self.ontology.clone(),
            reasoner: self.reasoner.clone(),
            taxonomy: self.taxonomy.clone(),
            graph,
            levels,
            scores,
            registry,
            config: self.config.clone(),
            timings,
        })
    }

    /// Scores of `method`, falling back to the configured default.
    pub fn scores_for(&self, method: &str) -> &[f64] {
        self.scores
            .get(method)
            .or_else(|| self.scores.get(&self.config.relevance.method))
            .or_else(|| self.scores.values().next())
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn context(&self, v: &ViewState) -> ViewContext<'_> {
        ViewContext::new(&self.graph, &self.levels, self.scores_for(&v.relevance_method))
    }

    /// Thing with one expansion step below it.
    pub fn initial_view(&self) -> ViewState {
        let mut v = ViewState::with_defaults(&self.graph, &self.config.view, &self.config.relevance.method);
        self.context(&v)
            .expand(&mut v, self.graph.top(), Direction::Descendants)
            .expect("Thing is visible");
        v
    }

    /// Shows exactly the summary. A scorer summary also makes that scorer
    /// drive the relevance policy.
    pub fn summarize(&self, v: &mut ViewState, req: &SummaryRequest) -> Result<Change, EngineError> {
        let set = summarize(&self.graph, &self.registry, req, self.config.relevance.tie_tolerance)?;
        if req.method != "custom" {
            v.relevance_method = req.method.clone();
        }
        Ok(self.context(v).show_only(v, set)?)
    }

    pub fn stats(&self) -> DocumentStats {
        let sig = self.ontology.signature();
        let g = &self.graph;
        let count = |k: NodeKind| g.nodes.iter().filter(|n| n.kind == k).count();
        DocumentStats {
            axioms: self.ontology.axioms.len(),
            skipped_axioms: self.ontology.opaque.len(),
            classes: sig.classes.len(),
            object_properties: sig.object_properties.len(),
            data_properties: sig.data_properties.len(),
            individuals: sig.individuals.len(),
            gcis: self.ontology.gci_count(),
            harvested_expressions: g.stats.harvested,
            anonymous_nodes: count(NodeKind::Anonymous),
            defined_nodes: count(NodeKind::Defined),
            nodes: g.len(),
            isa_edges: g.isa_edges().len(),
            unsatisfiable: g.unsatisfiable_count(),
        }
    }
}
