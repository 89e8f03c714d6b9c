//! HTTP routes. Every mutation answers with the whole visible graph plus
//! the nodes the mutation showed or hid.

use std::sync::{Arc, Mutex};

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use ontoview_core::layout::LayoutConfig;
use ontoview_core::parser::ParseError;
use ontoview_core::relevance::RelevanceError;
use ontoview_core::view::{export_dot, export_svg, search, view_layout, ViewError};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::model::{GraphView, NodeDetail, SearchHit, SessionCreated};
use crate::session::{Op, Session, SessionError, Store};

#[derive(Debug, thiserror::Error)]
pub enum ApiError {
    #[error(transparent)]
    Session(#[from] SessionError),
    #[error("malformed request body: {0}")]
    BadBody(String),
    #[error("cannot read {path}: {message}")]
    Unreadable { path: String, message: String },
    #[error("internal error: {0}")]
    Internal(String),
}

/// Error body: a stable `error` code, a message and, for unparsable
/// ontologies, every parse error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ErrorBody {
    pub error: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parse_errors: Vec<ParseError>,
}

impl ApiError {
    fn status_and_code(&self) -> (StatusCode, &'static str) {
        use SessionError as S;
        match self {
            ApiError::BadBody(_) => (StatusCode::BAD_REQUEST, "malformed-body"),
            ApiError::Unreadable { .. } => (StatusCode::BAD_REQUEST, "unreadable-path"),
            ApiError::Internal(_) => (StatusCode::INTERNAL_SERVER_ERROR, "internal"),
            ApiError::Session(e) => match e {
                S::UnknownSession(_) => (StatusCode::NOT_FOUND, "unknown-session"),
                S::UnknownNode(_) => (StatusCode::NOT_FOUND, "unknown-node"),
                S::InvalidWindow(_) => (StatusCode::BAD_REQUEST, "invalid-window"),
                S::Parse(_) => (StatusCode::UNPROCESSABLE_ENTITY, "parse-error"),
                S::Inconsistent(_) => (StatusCode::UNPROCESSABLE_ENTITY, "inconsistent"),
                S::View(ViewError::NotVisible(_)) => (StatusCode::CONFLICT, "not-visible"),
                S::View(ViewError::NoSuchNode(_)) => (StatusCode::NOT_FOUND, "unknown-node"),
                S::View(ViewError::UnknownNodes(_)) => (StatusCode::BAD_REQUEST, "unknown-nodes"),
                S::View(ViewError::VersionMismatch { .. }) => (StatusCode::BAD_REQUEST, "version-mismatch"),
                S::View(_) => (StatusCode::BAD_REQUEST, "invalid-value"),
                S::Relevance(RelevanceError::UnknownNode(_)) => (StatusCode::NOT_FOUND, "unknown-node"),
                S::Relevance(_) => (StatusCode::BAD_REQUEST, "invalid-summary"),
                S::Engine(_) => (StatusCode::INTERNAL_SERVER_ERROR, "engine"),
            },
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, code) = self.status_and_code();
        let parse_errors = match &self {
            ApiError::Session(SessionError::Parse(errs)) => errs.clone(),
            _ => Vec::new(),
        };
        let body = ErrorBody {
            error: code.to_string(),
            message: self.to_string(),
            parse_errors,
        };
        (status, Json(body)).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

pub struct AppState {
    pub store: Store,
    pub layout: LayoutConfig,
}

/// Parses a JSON body; an empty body reads as `{}`.
fn json_body<T: DeserializeOwned>(bytes: &[u8]) -> ApiResult<T> {
    let bytes = if bytes.iter().all(u8::is_ascii_whitespace) { b"{}".as_slice() } else { bytes };
    serde_json::from_slice(bytes).map_err(|e| ApiError::BadBody(e.to_string()))
}

fn lock(s: &Arc<Mutex<Session>>) -> ApiResult<std::sync::MutexGuard<'_, Session>> {
    s.lock().map_err(|_| ApiError::Internal("session lock poisoned".into()))
}

fn graph_of(app: &AppState, s: &Session) -> GraphView {
    GraphView::build(&s.id, &s.document_id, &s.doc, &s.view, &app.layout)
}

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "camelCase")]
struct LoadRequest {
    text: Option<String>,
    path: Option<String>,
}

/// The body is either the ontology itself or `{"text": …}` / `{"path": …}`.
fn ontology_text(body: &[u8]) -> ApiResult<String> {
    let text = std::str::from_utf8(body).map_err(|e| ApiError::BadBody(e.to_string()))?;
    if !text.trim_start().starts_with('{') {
        return Ok(text.to_string());
    }
    let req: LoadRequest = json_body(body)?;
    match (req.text, req.path) {
        (Some(t), None) => Ok(t),
        (None, Some(p)) => std::fs::read_to_string(&p).map_err(|e| ApiError::Unreadable {
            path: p,
            message: e.to_string(),
        }),
        _ => Err(ApiError::BadBody("give exactly one of \"text\" and \"path\"".into())),
    }
}

async fn create_session(State(app): State<Arc<AppState>>, body: Bytes) -> ApiResult<Response> {
    let text = ontology_text(&body)?;
    let worker = app.clone();
    let created = tokio::task::spawn_blocking(move || -> ApiResult<SessionCreated> {
        let s = worker.store.create(&text)?;
        let s = lock(&s)?;
        Ok(SessionCreated {
            session: s.id.clone(),
            document: s.document_id.clone(),
            created_at_ms: s.created_at_ms,
            timings: s.base.timings,
            stats: s.base.stats(),
            graph: graph_of(&worker, &s),
        })
    })
    .await
    .map_err(|e| ApiError::Internal(e.to_string()))??;
    log::info!("session {} on document {}", created.session, created.document);
    Ok((StatusCode::CREATED, Json(created)).into_response())
}

async fn delete_session(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult<StatusCode> {
    app.store.remove(&id)?;
    Ok(StatusCode::NO_CONTENT)
}

async fn get_graph(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult<Json<GraphView>> {
    let s = app.store.get(&id)?;
    let s = lock(&s)?;
    Ok(Json(graph_of(&app, &s)))
}

/// Applies the mutation named `op` with the request body as its arguments.
fn mutate(app: &AppState, id: &str, op: &str, body: &[u8]) -> ApiResult<Json<GraphView>> {
    let mut args: serde_json::Value = json_body(body)?;
    let obj = args
        .as_object_mut()
        .ok_or_else(|| ApiError::BadBody("expected a JSON object".into()))?;
    obj.insert("op".into(), serde_json::Value::String(op.into()));
    let op: Op = serde_json::from_value(args).map_err(|e| ApiError::BadBody(e.to_string()))?;
    let s = app.store.get(id)?;
    let mut s = lock(&s)?;
    let change = s.apply(&op)?;
    let mut g = graph_of(app, &s);
    g.change = Some(change);
    Ok(Json(g))
}

macro_rules! mutation {
    ($name:ident, $op:literal) => {
        async fn $name(State(app): State<Arc<AppState>>, Path(id): Path<String>, body: Bytes) -> ApiResult<Json<GraphView>> {
            let worker = app.clone();
            tokio::task::spawn_blocking(move || mutate(&worker, &id, $op, &body))
                .await
                .map_err(|e| ApiError::Internal(e.to_string()))?
        }
    };
}

mutation!(expand, "expand");
mutation!(collapse, "collapse");
mutation!(slider, "slider");
mutation!(policy, "policy");
mutation!(step, "step");
mutation!(zoom, "zoom");
mutation!(detail_window, "detailWindow");
mutation!(summarize, "summarize");
mutation!(select, "select");
mutation!(markers, "markers");
mutation!(move_node, "move");

#[derive(Debug, Deserialize)]
struct SearchQuery {
    #[serde(default)]
    q: String,
}

async fn search_nodes(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    Query(query): Query<SearchQuery>,
) -> ApiResult<Json<Vec<SearchHit>>> {
    let s = app.store.get(&id)?;
    let s = lock(&s)?;
    let g = &s.doc.graph;
    let hits = search(g, &query.q)
        .into_iter()
        .map(|i| SearchHit {
            id: g.node(i).id.clone(),
            label: g.node(i).label.clone(),
            kind: g.node(i).kind,
            visible: s.view.is_visible(i),
        })
        .collect();
    Ok(Json(hits))
}

async fn node_detail(
    State(app): State<Arc<AppState>>,
    Path((id, node)): Path<(String, String)>,
) -> ApiResult<Json<NodeDetail>> {
    let s = app.store.get(&id)?;
    let s = lock(&s)?;
    let i = s.node(&node)?;
    Ok(Json(NodeDetail::new(&s.doc, &s.view, i)))
}

async fn export_svg_route(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult<Response> {
    let s = app.store.get(&id)?;
    let s = lock(&s)?;
    let ctx = s.doc.context(&s.view);
    let lay = view_layout(&ctx, &s.view, &app.layout);
    let svg = export_svg(&ctx, &s.view, &lay);
    Ok(([(header::CONTENT_TYPE, "image/svg+xml")], svg).into_response())
}

async fn export_dot_route(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult<Response> {
    let s = app.store.get(&id)?;
    let s = lock(&s)?;
    let dot = export_dot(&s.view, &s.doc.graph);
    Ok(([(header::CONTENT_TYPE, "text/vnd.graphviz")], dot).into_response())
}

async fn get_view(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult<Response> {
    let s = app.store.get(&id)?;
    let s = lock(&s)?;
    Ok(([(header::CONTENT_TYPE, "application/json")], s.save_view()).into_response())
}

async fn put_view(State(app): State<Arc<AppState>>, Path(id): Path<String>, body: Bytes) -> ApiResult<Json<GraphView>> {
    let text = std::str::from_utf8(&body).map_err(|e| ApiError::BadBody(e.to_string()))?.to_string();
    let worker = app.clone();
    tokio::task::spawn_blocking(move || {
        let s = worker.store.get(&id)?;
        let mut s = lock(&s)?;
        s.load_view(&text)?;
        Ok(Json(graph_of(&worker, &s)))
    })
    .await
    .map_err(|e| ApiError::Internal(e.to_string()))?
}

async fn schema() -> Response {
    ([(header::CONTENT_TYPE, "application/json")], SCHEMA).into_response()
}

/// The published description of every request and response body.
pub const SCHEMA: &str = include_str!("../schema/api.json");

pub fn router(state: Arc<AppState>, max_body_bytes: usize) -> Router {
    Router::new()
        .route("/schema", get(schema))
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", axum::routing::delete(delete_session))
        .route("/sessions/{id}/graph", get(get_graph))
        .route("/sessions/{id}/expand", post(expand))
        .route("/sessions/{id}/collapse", post(collapse))
        .route("/sessions/{id}/slider", post(slider))
        .route("/sessions/{id}/policy", post(policy))
        .route("/sessions/{id}/step", post(step))
        .route("/sessions/{id}/zoom", post(zoom))
        .route("/sessions/{id}/detail-window", post(detail_window))
        .route("/sessions/{id}/summarize", post(summarize))
        .route("/sessions/{id}/select", post(select))
        .route("/sessions/{id}/markers", post(markers))
        .route("/sessions/{id}/move", post(move_node))
        .route("/sessions/{id}/search", get(search_nodes))
        .route("/sessions/{id}/node/{node}", get(node_detail))
        .route("/sessions/{id}/export.svg", get(export_svg_route))
        .route("/sessions/{id}/export.dot", get(export_dot_route))
        .route("/sessions/{id}/view", get(get_view).put(put_view))
        .layer(DefaultBodyLimit::max(max_body_bytes))
        .with_state(state)
}

pub fn app(store: Store, layout: LayoutConfig, max_body_bytes: usize) -> Router {
    router(Arc::new(AppState { store, layout }), max_body_bytes)
}
