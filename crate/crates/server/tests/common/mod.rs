#![allow(dead_code)]

use std::path::PathBuf;

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use ontoview_core::engine::EngineConfig;
use ontoview_core::layout::LayoutConfig;
use ontoview_server::{app, Store};
use serde_json::Value;
use tower::ServiceExt;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn pizza() -> String {
    std::fs::read_to_string(fixture_path("pizza.ofn")).unwrap()
}

pub fn test_app() -> Router {
    app(Store::new(EngineConfig::default()), LayoutConfig::default(), 64 << 20)
}

pub async fn call(app: &Router, method: Method, uri: &str, body: impl Into<Body>) -> (StatusCode, Vec<u8>) {
    let req = Request::builder().method(method).uri(uri).body(body.into()).unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes().to_vec();
    (status, bytes)
}

pub async fn json(app: &Router, method: Method, uri: &str, body: impl Into<Body>) -> (StatusCode, Value) {
    let (status, bytes) = call(app, method, uri, body).await;
    let v = serde_json::from_slice(&bytes).unwrap_or_else(|e| panic!("{uri}: {e}: {}", String::from_utf8_lossy(&bytes)));
    (status, v)
}

pub fn schema() -> Value {
    serde_json::from_str(ontoview_server::api::SCHEMA).unwrap()
}

fn is_node_id(s: &str) -> bool {
    s.len() == 17 && s.starts_with('n') && s[1..].chars().all(|c| matches!(c, '0'..='9' | 'a'..='f'))
}

fn type_matches(t: &str, v: &Value) -> bool {
    match t {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        "number" => v.is_number(),
        "integer" => v.is_u64() || v.is_i64(),
        other => panic!("schema type {other} not handled"),
    }
}

/// Checks `v` against the subset of JSON Schema used by the published
/// schema. Objects with listed properties must not carry unlisted keys.
pub fn validate(v: &Value, s: &Value, root: &Value, at: &str) -> Result<(), String> {
    if let Some(r) = s.get("$ref").and_then(Value::as_str) {
        let name = r.trim_start_matches("#/$defs/");
        return validate(v, &root["$defs"][name], root, at);
    }
    if let Some(options) = s.get("oneOf").and_then(Value::as_array) {
        if !options.iter().any(|o| validate(v, o, root, at).is_ok()) {
            return Err(format!("{at}: no alternative matches {v}"));
        }
    }
    if let Some(e) = s.get("enum").and_then(Value::as_array) {
        if !e.contains(v) {
            return Err(format!("{at}: {v} not in {e:?}"));
        }
    }
    if let Some(c) = s.get("const") {
        if c != v {
            return Err(format!("{at}: {v} != {c}"));
        }
    }
    match s.get("type") {
        Some(Value::String(t)) if !type_matches(t, v) => return Err(format!("{at}: {v} is not {t}")),
        Some(Value::Array(ts)) if !ts.iter().any(|t| type_matches(t.as_str().unwrap(), v)) => {
            return Err(format!("{at}: {v} matches none of {ts:?}"));
        }
        _ => {}
    }
    if s.get("pattern").is_some() && !v.as_str().is_some_and(is_node_id) {
        return Err(format!("{at}: {v} is not a node id"));
    }
    if let (Some(obj), true) = (v.as_object(), s.get("type") == Some(&Value::String("object".into()))) {
        for req in s.get("required").and_then(Value::as_array).into_iter().flatten() {
            let k = req.as_str().unwrap();
            if !obj.contains_key(k) {
                return Err(format!("{at}: missing {k}"));
            }
        }
        let props = s.get("properties").and_then(Value::as_object);
        let extra = s.get("additionalProperties");
        for (k, x) in obj {
            let path = format!("{at}.{k}");
            match (props.and_then(|p| p.get(k)), extra) {
                (Some(ps), _) => validate(x, ps, root, &path)?,
                (None, Some(es)) => validate(x, es, root, &path)?,
                (None, None) if props.is_some() => return Err(format!("{at}: unexpected key {k}")),
                _ => {}
            }
        }
    }
    if let (Some(items), Some(arr)) = (s.get("items"), v.as_array()) {
        for (i, x) in arr.iter().enumerate() {
            validate(x, items, root, &format!("{at}[{i}]"))?;
        }
    }
    Ok(())
}

pub fn assert_schema(v: &Value, def: &str) {
    let root = schema();
    let s = serde_json::json!({ "$ref": format!("#/$defs/{def}") });
    if let Err(e) = validate(v, &s, &root, def) {
        panic!("response does not match {def}: {e}");
    }
}
