use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{Markers, Policy, ViewError, ViewState};
use crate::graph::{DetailWindow, OntoGraph};
use crate::iri::PrefixTable;
use crate::parser::parse_class_expression;

pub const VIEW_FORMAT: &str = "ontoview-view";
pub const VIEW_VERSION: u32 = 1;

/// The on-disk form of a [`ViewState`]: nodes by id, the window as
/// functional-syntax expressions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ViewDocument {
    pub format: String,
    pub version: u32,
    pub visible: Vec<String>,
    pub step_percent: f64,
    pub policy: Option<Policy>,
    pub zoom: f64,
    pub detail_window: WindowDoc,
    pub position_overrides: BTreeMap<String, (f64, f64)>,
    pub selection: Option<String>,
    pub markers: BTreeMap<String, Markers>,
    pub sliders: BTreeMap<String, f64>,
    pub relevance_method: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowDoc {
    pub upper: String,
    pub lower: String,
}

impl ViewDocument {
    pub fn from_state(v: &ViewState, g: &OntoGraph) -> Self {
        let id = |i: &usize| g.node(*i).id.clone();
        ViewDocument {
            format: VIEW_FORMAT.into(),
            version: VIEW_VERSION,
            visible: v.visible.iter().map(id).collect(),
            step_percent: v.step_percent,
            policy: v.policy,
            zoom: v.zoom,
            detail_window: WindowDoc {
                upper: v.detail_window.upper.to_functional(),
                lower: v.detail_window.lower.to_functional(),
            },
            position_overrides: v.position_overrides.iter().map(|(i, p)| (id(i), *p)).collect(),
            selection: v.selection.as_ref().map(id),
            markers: v.markers.iter().map(|(i, m)| (id(i), *m)).collect(),
            sliders: v.sliders.iter().map(|(i, p)| (id(i), *p)).collect(),
            relevance_method: v.relevance_method.clone(),
        }
    }

    /// Parses and version-checks a document without binding its ids.
    pub fn parse(text: &str) -> Result<Self, ViewError> {
        let raw: serde_json::Value =
            serde_json::from_str(text).map_err(|e| ViewError::Malformed(e.to_string()))?;
        if raw.get("format").and_then(|f| f.as_str()) != Some(VIEW_FORMAT) {
            return Err(ViewError::Malformed(format!("format is not {VIEW_FORMAT:?}")));
        }
        let version = raw
            .get("version")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| ViewError::Malformed("missing version".into()))?;
        if version != u64::from(VIEW_VERSION) {
            return Err(ViewError::VersionMismatch {
                found: version.try_into().unwrap_or(u32::MAX),
                expected: VIEW_VERSION,
            });
        }
        serde_json::from_value(raw).map_err(|e| ViewError::Malformed(e.to_string()))
    }

    pub fn window(&self) -> Result<DetailWindow, ViewError> {
        let parse = |s: &str| {
            parse_class_expression(s, &PrefixTable::default()).map_err(|errs| {
                let msg: Vec<String> = errs.iter().map(ToString::to_string).collect();
                ViewError::Malformed(format!("detail window {s:?}: {}", msg.join("; ")))
            })
        };
        Ok(DetailWindow::new(
            parse(&self.detail_window.upper)?,
            parse(&self.detail_window.lower)?,
        ))
    }

    /// Resolves node ids against `g`; every unknown id is reported.
    pub fn bind(&self, g: &OntoGraph) -> Result<ViewState, ViewError> {
        let mut unknown: BTreeSet<String> = BTreeSet::new();
        let mut resolve = |id: &String| match g.index_of(id) {
            Some(i) => i,
            None => {
                unknown.insert(id.clone());
                usize::MAX
            }
        };
        let visible: BTreeSet<usize> = self.visible.iter().map(&mut resolve).collect();
        let position_overrides: BTreeMap<usize, (f64, f64)> =
            self.position_overrides.iter().map(|(id, p)| (resolve(id), *p)).collect();
        let selection = self.selection.as_ref().map(&mut resolve);
        let markers: BTreeMap<usize, Markers> = self.markers.iter().map(|(id, m)| (resolve(id), *m)).collect();
        let sliders: BTreeMap<usize, f64> = self.sliders.iter().map(|(id, p)| (resolve(id), *p)).collect();
        if !unknown.is_empty() {
            return Err(ViewError::UnknownNodes(unknown.into_iter().collect()));
        }
        if !visible.contains(&g.top()) {
            return Err(ViewError::Malformed("Thing must be visible".into()));
        }
        if !(self.step_percent > 0.0 && self.step_percent <= 100.0) {
            return Err(ViewError::InvalidStep(self.step_percent));
        }
        if !(self.zoom > 0.0 && self.zoom.is_finite()) {
            return Err(ViewError::InvalidZoom(self.zoom));
        }
        Ok(ViewState {
            visible,
            step_percent: self.step_percent,
            policy: self.policy,
            zoom: self.zoom,
            detail_window: self.window()?,
            position_overrides,
            selection,
            markers,
            sliders,
            relevance_method: self.relevance_method.clone(),
        })
    }
}

/// Pretty-printed JSON document.
pub fn save_view(v: &ViewState, g: &OntoGraph) -> String {
    let doc = ViewDocument::from_state(v, g);
    let mut s = serde_json::to_string_pretty(&doc).expect("view documents serialize");
    s.push('\n');
    s
}

/// Parses a document and binds it to `g`, which must have been built with
/// the document's detail window.
pub fn load_view(text: &str, g: &OntoGraph) -> Result<ViewState, ViewError> {
    ViewDocument::parse(text)?.bind(g)
}
