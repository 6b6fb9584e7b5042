//! HTTP service over the same documents as the command line.

use std::sync::Arc;

use axum::body::Body;
use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::Response;
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::doc::{render, Doc, Format, InputError};
use crate::ops::{self, BehaviourOp, Criterion, NormalizeOpts, UniverseOpts};
use crate::session::{ChooseError, Choice, Store};

fn respond(status: StatusCode, v: &Value) -> Response {
    Response::builder()
        .status(status)
        .header(header::CONTENT_TYPE, "application/json")
        .body(Body::from(render(v, Format::Json)))
        .expect("static headers")
}

fn outcome(r: Result<Doc, InputError>) -> Response {
    match r {
        Ok(d) => respond(StatusCode::OK, &d.value),
        Err(e) => respond(StatusCode::BAD_REQUEST, &e.doc()),
    }
}

fn session_error(e: ChooseError) -> Response {
    match e {
        ChooseError::NotFound => respond(StatusCode::NOT_FOUND, &json!({ "error": "session not found" })),
        ChooseError::Illegal { offered } => {
            respond(StatusCode::CONFLICT, &json!({ "error": "illegal choice", "offered": offered }))
        }
        ChooseError::Input(e) => respond(StatusCode::BAD_REQUEST, &e.doc()),
    }
}

/// Stateless commands run off the async workers.
async fn blocking(f: impl FnOnce() -> Result<Doc, InputError> + Send + 'static) -> Response {
    match tokio::task::spawn_blocking(f).await {
        Ok(r) => outcome(r),
        Err(e) => respond(StatusCode::INTERNAL_SERVER_ERROR, &json!({ "error": e.to_string() })),
    }
}

#[derive(Deserialize)]
struct NewSession {
    net: String,
    #[serde(default)]
    alphabet: Option<String>,
    #[serde(default)]
    fuel: Option<usize>,
}

async fn create(State(store): State<Arc<Store>>, Json(b): Json<NewSession>) -> Response {
    let r = tokio::task::spawn_blocking(move || store.create(&b.net, b.alphabet.as_deref(), b.fuel)).await;
    match r {
        Ok(Ok(st)) => respond(StatusCode::CREATED, &serde_json::to_value(st).expect("states serialize")),
        Ok(Err(e)) => respond(StatusCode::BAD_REQUEST, &e.doc()),
        Err(e) => respond(StatusCode::INTERNAL_SERVER_ERROR, &json!({ "error": e.to_string() })),
    }
}

async fn read(State(store): State<Arc<Store>>, Path(id): Path<u64>) -> Response {
    match store.get(id) {
        Ok(st) => respond(StatusCode::OK, &serde_json::to_value(st).expect("states serialize")),
        Err(e) => session_error(e),
    }
}

async fn choose(State(store): State<Arc<Store>>, Path(id): Path<u64>, Json(c): Json<Choice>) -> Response {
    let r = tokio::task::spawn_blocking(move || store.choose(id, c)).await;
    match r {
        Ok(Ok(st)) => respond(StatusCode::OK, &serde_json::to_value(st).expect("states serialize")),
        Ok(Err(e)) => session_error(e),
        Err(e) => respond(StatusCode::INTERNAL_SERVER_ERROR, &json!({ "error": e.to_string() })),
    }
}

#[derive(Deserialize)]
struct CheckReq {
    criterion: Criterion,
    input: String,
}

async fn check(Json(b): Json<CheckReq>) -> Response {
    blocking(move || ops::check(b.criterion, &b.input)).await
}

#[derive(Deserialize)]
struct NormalizeReq {
    input: String,
    #[serde(flatten)]
    opts: NormalizeOpts,
}

async fn normalize(Json(b): Json<NormalizeReq>) -> Response {
    blocking(move || ops::normalize(&b.input, &b.opts)).await
}

#[derive(Deserialize)]
struct BehaviourReq {
    op: BehaviourOp,
    input: String,
    #[serde(flatten)]
    opts: UniverseOpts,
}

async fn behaviour(Json(b): Json<BehaviourReq>) -> Response {
    blocking(move || ops::behaviour(b.op, &b.input, &b.opts)).await
}

#[derive(Deserialize)]
struct TokenReq {
    input: String,
}

/// Orthogonality with the token machine's visit and pull-back.
async fn token(Json(b): Json<TokenReq>) -> Response {
    blocking(move || ops::orthogonal(&b.input, true)).await
}

pub fn router(store: Arc<Store>) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(read))
        .route("/sessions/{id}/choice", post(choose))
        .route("/check", post(check))
        .route("/normalize", post(normalize))
        .route("/behaviour", post(behaviour))
        .route("/token", post(token))
        .with_state(store)
}

pub async fn serve(port: u16, store: Arc<Store>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    eprintln!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(store)).await
}
