//! JSON API over a [`Store`].
//!
//! | method | path                        | body                                        |
//! |--------|-----------------------------|---------------------------------------------|
//! | GET    | `/library`                  |                                             |
//! | POST   | `/problems?name=N`          | problem file as `text/plain`                |
//! | POST   | `/sessions`                 | `{"problem_id"}`                            |
//! | GET    | `/sessions/{id}`            |                                             |
//! | PATCH  | `/sessions/{id}`            | `{"observation_mode": bool}`                |
//! | POST   | `/sessions/{id}/preview`    | `{"goal_position", "rule_index", "bindings"}` |
//! | POST   | `/sessions/{id}/apply`      | same as preview                             |
//! | POST   | `/sessions/{id}/undo`       |                                             |
//! | GET    | `/sessions/{id}/export?format=latex\|text\|structured` |                  |
//!
//! `bindings` maps variable names to terms in file syntax. A preview whose
//! rule does not match answers 200 with `"status": "no_match"`; every other
//! failure uses the error body `{code, message, details}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use log::info;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};
use tokio::net::TcpListener;

use axolotl::engine::{Application, EngineError, ProofNode, ProofSession};
use axolotl::export::{export, ExportError, ExportFormat};
use axolotl::problem::ProblemSpec;
use axolotl::term::{parse_term, HoleStyle, Holed, PrintMode, Substitution, Term};

use crate::error::{ApiError, ErrorCode};
use crate::store::{SessionRecord, Store};

type ApiResult<T> = Result<T, ApiError>;

pub fn router(store: Arc<Store>) -> Router {
    Router::new()
        .route("/library", get(library))
        .route("/problems", post(upload_problem))
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session).patch(patch_session))
        .route("/sessions/{id}/preview", post(preview))
        .route("/sessions/{id}/apply", post(apply))
        .route("/sessions/{id}/undo", post(undo))
        .route("/sessions/{id}/export", get(export_session))
        .with_state(store)
}

/// Serves until `shutdown` resolves.
pub async fn serve<F>(listener: TcpListener, store: Arc<Store>, shutdown: F) -> std::io::Result<()>
where
    F: std::future::Future<Output = ()> + Send + 'static,
{
    axum::serve(listener, router(store)).with_graceful_shutdown(shutdown).await
}

fn body<T: DeserializeOwned>(bytes: &Bytes) -> ApiResult<T> {
    let bytes: &[u8] = if bytes.is_empty() { b"{}" } else { bytes };
    serde_json::from_slice(bytes).map_err(|e| ApiError::invalid(format!("invalid JSON body: {e}")))
}

fn display(spec: &ProblemSpec, t: &Term) -> String {
    spec.print(t, PrintMode::Display)
}

fn file(spec: &ProblemSpec, t: &Term) -> String {
    spec.print(t, PrintMode::File)
}

fn holed(spec: &ProblemSpec, h: &Holed) -> String {
    h.render(&spec.signature, PrintMode::Display, HoleStyle::Plain)
}

fn node_json(spec: &ProblemSpec, n: &ProofNode) -> Value {
    json!({
        "goal": display(spec, &n.goal),
        "goal_file": file(spec, &n.goal),
        "status": if n.is_open() { "open" } else { "closed" },
        "rule_index": n.rule_index,
        "rule_name": n.rule_name,
        "children": n.children.iter().map(|c| node_json(spec, c)).collect::<Vec<_>>(),
    })
}

fn rules_json(spec: &ProblemSpec) -> Vec<Value> {
    spec.rules
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let premises: Vec<String> = r.premises.iter().map(|p| display(spec, p)).collect();
            let conclusion = display(spec, &r.conclusion);
            let above = if premises.is_empty() { "∅".to_string() } else { premises.join(", ") };
            json!({
                "index": i,
                "name": r.name,
                "label": r.label(i),
                "succinct": format!("{}: {above} / {conclusion}", r.label(i)),
                "pretty": { "premises": premises, "conclusion": conclusion },
                "free_variables": r.free_variables(),
            })
        })
        .collect()
}

pub fn state_json(record: &SessionRecord) -> Value {
    let s = &record.session;
    let spec = &s.spec;
    json!({
        "id": record.id,
        "problem_id": record.problem_id,
        "goals": s.goals().iter().enumerate().map(|(i, g)| json!({
            "position": i,
            "display": display(spec, g),
            "file": file(spec, g),
        })).collect::<Vec<_>>(),
        "rules": rules_json(spec),
        "tree": s.roots.iter().map(|r| node_json(spec, r)).collect::<Vec<_>>(),
        "complete": s.is_complete(),
        "observation_mode": record.observation_mode,
        "history_length": s.history.len(),
        "created_ms": record.created_ms,
        "updated_ms": record.updated_ms,
    })
}

async fn library(State(store): State<Arc<Store>>) -> Json<Value> {
    let entries: Vec<Value> = store
        .library()
        .iter()
        .map(|e| {
            json!({
                "id": e.id,
                "category": e.category,
                "name": e.name,
                "goal_preview": e.spec.goals.iter().map(|g| display(&e.spec, g)).collect::<Vec<_>>(),
            })
        })
        .collect();
    Json(Value::Array(entries))
}

#[derive(Deserialize)]
struct UploadQuery {
    name: Option<String>,
}

async fn upload_problem(
    State(store): State<Arc<Store>>,
    Query(q): Query<UploadQuery>,
    bytes: Bytes,
) -> ApiResult<Response> {
    let text = std::str::from_utf8(&bytes).map_err(|_| ApiError::invalid("problem file is not UTF-8"))?;
    let name = q.name.unwrap_or_else(|| "uploaded".to_string());
    match store.add_problem(&name, text) {
        Ok(entry) => {
            info!("uploaded problem {} ({name})", entry.id);
            Ok((StatusCode::CREATED, Json(json!({ "id": entry.id })) ).into_response())
        }
        Err(diags) => {
            let details: Vec<Value> = diags
                .iter()
                .map(|d| json!({ "line": d.line, "column": d.column, "kind": d.kind.as_str(), "message": d.message }))
                .collect();
            Err(ApiError::invalid(format!("{} problem(s) in the uploaded file", diags.len()))
                .with_details(json!({ "diagnostics": details })))
        }
    }
}

#[derive(Deserialize)]
struct CreateSession {
    problem_id: String,
}

async fn create_session(State(store): State<Arc<Store>>, bytes: Bytes) -> ApiResult<Response> {
    let req: CreateSession = body(&bytes)?;
    let handle = store
        .create_session(&req.problem_id)
        .ok_or_else(|| ApiError::not_found("problem", &req.problem_id))?;
    let record = handle.lock().await;
    info!("session {} on {}", record.id, record.problem_id);
    let out = json!({ "session_id": record.id, "state": state_json(&record) });
    Ok((StatusCode::CREATED, Json(out)).into_response())
}

fn session_handle(store: &Store, id: &str) -> ApiResult<Arc<tokio::sync::Mutex<SessionRecord>>> {
    store.session(id).ok_or_else(|| ApiError::not_found("session", id))
}

async fn get_session(State(store): State<Arc<Store>>, Path(id): Path<String>) -> ApiResult<Json<Value>> {
    let handle = session_handle(&store, &id)?;
    let record = handle.lock().await;
    Ok(Json(state_json(&record)))
}

#[derive(Deserialize)]
struct PatchSession {
    observation_mode: Option<bool>,
}

async fn patch_session(
    State(store): State<Arc<Store>>,
    Path(id): Path<String>,
    bytes: Bytes,
) -> ApiResult<Json<Value>> {
    let req: PatchSession = body(&bytes)?;
    let handle = session_handle(&store, &id)?;
    let mut record = handle.lock().await;
    if let Some(mode) = req.observation_mode {
        record.observation_mode = mode;
        record.touch();
        store.persist(&record);
    }
    Ok(Json(state_json(&record)))
}

#[derive(Deserialize)]
struct StepRequest {
    goal_position: usize,
    rule_index: usize,
    #[serde(default)]
    bindings: BTreeMap<String, String>,
}

fn application(session: &ProofSession, req: &StepRequest) -> ApiResult<Application> {
    let sig = &session.spec.signature;
    let mut bindings = Substitution::new();
    for (var, text) in &req.bindings {
        if !sig.is_variable(var) {
            return Err(ApiError::invalid(format!("`{var}` is not a declared variable"))
                .with_details(json!({ "variable": var })));
        }
        let t = parse_term(text, sig).map_err(|e| {
            ApiError::invalid(format!("binding for `{var}`: {e}"))
                .with_details(json!({ "variable": var, "offset": e.offset }))
        })?;
        bindings.bind(var.clone(), t);
    }
    Ok(Application {
        goal_position: req.goal_position,
        rule_index: req.rule_index,
        bindings,
    })
}

async fn preview(
    State(store): State<Arc<Store>>,
    Path(id): Path<String>,
    bytes: Bytes,
) -> ApiResult<Json<Value>> {
    let req: StepRequest = body(&bytes)?;
    let handle = session_handle(&store, &id)?;
    let record = handle.lock().await;
    let session = &record.session;
    let spec = &session.spec;
    let app = application(session, &req)?;
    match session.preview(&app) {
        Ok(p) => {
            let goal = session.goals()[app.goal_position];
            let trace: Vec<Value> = p
                .report
                .trace
                .iter()
                .map(|(var, sub)| {
                    json!({
                        "variable": file(spec, var),
                        "subterm": display(spec, sub),
                        "subterm_file": file(spec, sub),
                    })
                })
                .collect();
            Ok(Json(json!({
                "status": "ok",
                "match_trace": trace,
                "unbound_vars": p.unbound,
                "tentative_goals": p.goals.iter().map(|g| holed(spec, g)).collect::<Vec<_>>(),
                "instantiated": {
                    "premises": p.premises.iter().map(|g| holed(spec, g)).collect::<Vec<_>>(),
                    "conclusion": display(spec, goal),
                },
            })))
        }
        Err(EngineError::NoMatch { rule }) => Ok(Json(json!({
            "status": "no_match",
            "message": format!("conclusion of rule {rule} does not match the goal"),
            "rule": rule,
        }))),
        Err(e) => Err(e.into()),
    }
}

async fn apply(
    State(store): State<Arc<Store>>,
    Path(id): Path<String>,
    bytes: Bytes,
) -> ApiResult<Json<Value>> {
    let req: StepRequest = body(&bytes)?;
    let handle = session_handle(&store, &id)?;
    let mut record = handle.lock().await;
    let app = application(&record.session, &req)?;
    record.session.apply(&app)?;
    record.touch();
    store.persist(&record);
    let completed = record.session.is_complete();
    Ok(Json(json!({ "completed": completed, "state": state_json(&record) })))
}

async fn undo(State(store): State<Arc<Store>>, Path(id): Path<String>) -> ApiResult<Json<Value>> {
    let handle = session_handle(&store, &id)?;
    let mut record = handle.lock().await;
    record.session.undo()?;
    record.touch();
    store.persist(&record);
    Ok(Json(state_json(&record)))
}

#[derive(Deserialize)]
struct ExportQuery {
    format: Option<String>,
}

async fn export_session(
    State(store): State<Arc<Store>>,
    Path(id): Path<String>,
    Query(q): Query<ExportQuery>,
) -> ApiResult<Response> {
    let format: ExportFormat = q
        .format
        .as_deref()
        .unwrap_or("structured")
        .parse()
        .map_err(ApiError::invalid)?;
    let handle = session_handle(&store, &id)?;
    let record = handle.lock().await;
    match export(&record.session, format) {
        Ok(doc) => Ok(([(header::CONTENT_TYPE, format.content_type())], doc).into_response()),
        Err(e @ ExportError::TooManyPremises { .. }) => {
            let ExportError::TooManyPremises { rule, premises } = &e;
            Err(ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, ErrorCode::IllFormed, e.to_string())
                .with_details(json!({ "rule": rule, "premises": premises })))
        }
    }
}
