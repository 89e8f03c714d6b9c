//! In-memory sessions. A loaded document is classified once and shared
//! read-only by every session on the same text; each session owns its view
//! and serializes its own mutations.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, RwLock, Weak};
use std::time::{SystemTime, UNIX_EPOCH};

use ontoview_core::engine::{Document, EngineConfig, EngineError};
use ontoview_core::graph::{DetailWindow, GraphError};
use ontoview_core::parser::{parse_class_expression, ParseError};
use ontoview_core::reasoner::ReasonerError;
use ontoview_core::relevance::{RelevanceError, SummaryRequest};
use ontoview_core::view::{
    save_view, set_step, set_zoom, Change, Direction, Markers, Policy, ViewDocument, ViewError, ViewState,
};
use ontoview_core::{ClassExpression as CE, Ontology};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::model::ChangeView;

#[derive(Debug, thiserror::Error)]
pub enum SessionError {
    #[error("unknown session {0}")]
    UnknownSession(String),
    #[error("unknown node {0}")]
    UnknownNode(String),
    #[error("invalid detail window: {0}")]
    InvalidWindow(String),
    #[error("{} parse error(s)", .0.len())]
    Parse(Vec<ParseError>),
    #[error("{0}")]
    Inconsistent(ReasonerError),
    #[error(transparent)]
    View(#[from] ViewError),
    #[error(transparent)]
    Relevance(#[from] RelevanceError),
    #[error(transparent)]
    Engine(EngineError),
}

impl From<EngineError> for SessionError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Parse(errs) => SessionError::Parse(errs),
            EngineError::Reasoner(r @ ReasonerError::Inconsistent) => SessionError::Inconsistent(r),
            EngineError::Graph(GraphError::InvalidWindow { upper, lower }) => {
                SessionError::InvalidWindow(format!("{lower} is not subsumed by {upper}"))
            }
            EngineError::Graph(GraphError::Reasoner(r)) => SessionError::InvalidWindow(r.to_string()),
            EngineError::View(v) => SessionError::View(v),
            EngineError::Relevance(RelevanceError::UnknownNode(id)) => SessionError::UnknownNode(id),
            EngineError::Relevance(r) => SessionError::Relevance(r),
            other => SessionError::Engine(other),
        }
    }
}

/// Parses one bound of a detail window: functional syntax using the
/// document's prefixes, or the bare local name of a declared class.
pub fn parse_bound(o: &Ontology, text: &str) -> Result<CE, SessionError> {
    let text = text.trim();
    let ce = match parse_class_expression(text, &o.prefixes) {
        Ok(ce) => ce,
        Err(errs) => {
            let sig = o.signature();
            let mut named = sig.classes.iter().filter(|c| c.local_name() == text);
            match (named.next(), named.next()) {
                (Some(c), None) => CE::atomic(c.clone()),
                _ => {
                    let msg: Vec<String> = errs.iter().map(ToString::to_string).collect();
                    return Err(SessionError::InvalidWindow(format!("{text:?}: {}", msg.join("; "))));
                }
            }
        }
    };
    o.signature()
        .contains_class_expression(&ce)
        .map_err(|iri| SessionError::InvalidWindow(format!("unknown class {iri}")))?;
    Ok(ce)
}

pub fn parse_window(o: &Ontology, upper: Option<&str>, lower: Option<&str>) -> Result<DetailWindow, SessionError> {
    let upper = upper.map(|u| parse_bound(o, u)).transpose()?.unwrap_or(CE::Thing);
    let lower = lower.map(|l| parse_bound(o, l)).transpose()?.unwrap_or(CE::Nothing);
    Ok(DetailWindow::new(upper, lower))
}

/// One view mutation, as carried by the HTTP request bodies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "op")]
pub enum Op {
    Expand {
        node: String,
        #[serde(default = "descendants")]
        direction: Direction,
    },
    Collapse {
        node: String,
        #[serde(default = "descendants")]
        direction: Direction,
    },
    Slider { node: String, percent: f64 },
    Policy { policy: Option<Policy> },
    Step { percent: f64 },
    Zoom { zoom: f64 },
    DetailWindow { upper: Option<String>, lower: Option<String> },
    Summarize(SummaryRequest),
    Select { node: Option<String> },
    Markers {
        node: String,
        disjoint: Option<bool>,
        properties: Option<bool>,
    },
    Move { node: String, position: Option<[f64; 2]> },
}

fn lookup(doc: &Document, id: &str) -> Result<usize, SessionError> {
    doc.graph.index_of(id).ok_or_else(|| SessionError::UnknownNode(id.to_string()))
}

fn descendants() -> Direction {
    Direction::Descendants
}

pub struct Session {
    pub id: String,
    pub document_id: String,
    pub created_at_ms: u128,
    /// The document under the default window.
    pub base: Arc<Document>,
    /// The document under the current window.
    pub doc: Arc<Document>,
    pub view: ViewState,
}

impl Session {
    pub fn new(id: String, document_id: String, base: Arc<Document>) -> Self {
        let view = base.initial_view();
        Session {
            id,
            document_id,
            created_at_ms: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_millis()),
            doc: base.clone(),
            base,
            view,
        }
    }

    pub fn node(&self, id: &str) -> Result<usize, SessionError> {
        lookup(&self.doc, id)
    }

    /// Applies `op` and reports the nodes it showed and hid.
    pub fn apply(&mut self, op: &Op) -> Result<ChangeView, SessionError> {
        let doc = self.doc.clone();
        let ctx = doc.context(&self.view);
        let v = &mut self.view;
        let change = match op {
            Op::Expand { node, direction } => ctx.expand(v, lookup(&doc, node)?, *direction)?,
            Op::Collapse { node, direction } => ctx.collapse(v, lookup(&doc, node)?, *direction)?,
            Op::Slider { node, percent } => ctx.set_slider(v, lookup(&doc, node)?, *percent)?,
            Op::Policy { policy } => {
                v.policy = *policy;
                Change::default()
            }
            Op::Step { percent } => {
                set_step(v, *percent)?;
                Change::default()
            }
            Op::Zoom { zoom } => {
                set_zoom(v, *zoom)?;
                Change::default()
            }
            Op::Summarize(req) => doc.summarize(v, req)?,
            Op::Select { node } => {
                let i = node.as_deref().map(|n| lookup(&doc, n)).transpose()?;
                ctx.select(v, i)?;
                Change::default()
            }
            Op::Markers { node, disjoint, properties } => {
                let i = lookup(&doc, node)?;
                let old = v.markers(i);
                let m = Markers {
                    disjoint: disjoint.unwrap_or(old.disjoint),
                    properties: properties.unwrap_or(old.properties),
                };
                ctx.set_markers(v, i, m)?;
                Change::default()
            }
            Op::Move { node, position } => {
                let i = lookup(&doc, node)?;
                ctx.move_node(v, i, position.map(|[x, y]| (x, y)))?;
                Change::default()
            }
            Op::DetailWindow { upper, lower } => {
                let w = parse_window(&self.base.ontology, upper.as_deref(), lower.as_deref())?;
                return self.set_window(w);
            }
        };
        Ok(ChangeView::new(&change, &doc.graph))
    }

    /// Rebuilds the graph through `w`, keeping whatever visible nodes,
    /// markers and positions still exist.
    pub fn set_window(&mut self, w: DetailWindow) -> Result<ChangeView, SessionError> {
        let next = if w == self.base.graph.window {
            self.base.clone()
        } else {
            Arc::new(self.base.with_window(&w)?)
        };
        let mut d = ViewDocument::from_state(&self.view, &self.doc.graph);
        let known = |id: &String| next.graph.index_of(id).is_some();
        let before: Vec<String> = d.visible.clone();
        d.visible.retain(known);
        d.position_overrides.retain(|id, _| known(id));
        d.markers.retain(|id, _| known(id));
        d.sliders.retain(|id, _| known(id));
        d.selection = d.selection.filter(known);
        d.detail_window.upper = w.upper.to_functional();
        d.detail_window.lower = w.lower.to_functional();
        let view = d.bind(&next.graph)?;
        let hidden = before.into_iter().filter(|id| !known(id)).collect();
        self.doc = next;
        self.view = view;
        Ok(ChangeView {
            hidden,
            ..ChangeView::default()
        })
    }

    /// Replaces the view with a saved one, rebuilding for its window.
    pub fn load_view(&mut self, text: &str) -> Result<(), SessionError> {
        let d = ViewDocument::parse(text)?;
        let w = d.window()?;
        let next = if w == self.doc.graph.window {
            self.doc.clone()
        } else if w == self.base.graph.window {
            self.base.clone()
        } else {
            Arc::new(self.base.with_window(&w)?)
        };
        self.view = d.bind(&next.graph)?;
        self.doc = next;
        Ok(())
    }

    pub fn save_view(&self) -> String {
        save_view(&self.view, &self.doc.graph)
    }
}

/// Hex digest naming the document built from `text`.
pub fn document_id(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    let mut s = String::from("d");
    for b in &digest[..8] {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

pub struct Store {
    pub config: EngineConfig,
    documents: Mutex<HashMap<String, Weak<Document>>>,
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
}

impl Store {
    pub fn new(config: EngineConfig) -> Self {
        Store {
            config,
            documents: Mutex::new(HashMap::new()),
            sessions: RwLock::new(HashMap::new()),
        }
    }

    /// The shared document for `text`, built on first use.
    pub fn document(&self, text: &str) -> Result<(String, Arc<Document>), SessionError> {
        let id = document_id(text);
        if let Some(doc) = self.documents.lock().expect("poisoned").get(&id).and_then(Weak::upgrade) {
            return Ok((id, doc));
        }
        let doc = Arc::new(Document::from_text(text, self.config.clone())?);
        let mut docs = self.documents.lock().expect("poisoned");
        docs.retain(|_, d| d.strong_count() > 0);
        // a concurrent load of the same text may have won; share its result
        let doc = match docs.get(&id).and_then(Weak::upgrade) {
            Some(existing) => existing,
            None => {
                docs.insert(id.clone(), Arc::downgrade(&doc));
                doc
            }
        };
        Ok((id, doc))
    }

    pub fn create(&self, text: &str) -> Result<Arc<Mutex<Session>>, SessionError> {
        let (doc_id, doc) = self.document(text)?;
        let id = uuid::Uuid::new_v4().simple().to_string();
        let s = Arc::new(Mutex::new(Session::new(id.clone(), doc_id, doc)));
        self.sessions.write().expect("poisoned").insert(id, s.clone());
        Ok(s)
    }

    pub fn get(&self, id: &str) -> Result<Arc<Mutex<Session>>, SessionError> {
        self.sessions
            .read()
            .expect("poisoned")
            .get(id)
            .cloned()
            .ok_or_else(|| SessionError::UnknownSession(id.to_string()))
    }

    pub fn remove(&self, id: &str) -> Result<(), SessionError> {
        self.sessions
            .write()
            .expect("poisoned")
            .remove(id)
            .map(|_| ())
            .ok_or_else(|| SessionError::UnknownSession(id.to_string()))
    }

    pub fn len(&self) -> usize {
        self.sessions.read().expect("poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
