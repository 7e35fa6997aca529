//! HTTP service for programmatic consumers.
//!
//! Endpoints:
//! - `POST /api/documents`: body is one metadata JSON document; 200 with
//!   the ingest report, 422 with the validation report on invalid input.
//! - `POST /api/query`: body `{"query": "..."}`; 200 with
//!   `{columns, rows}`, 400 with the parse error and its position.
//! - `GET /api/stats`: graph stats.
//! - `GET /api/graph?format=graphml|dot`: rendered export.
//! - `GET /health`: liveness.
//!
//! Reads run concurrently; mutations serialize behind one write lock and
//! persist a fresh snapshot before the response leaves.

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::{Arc, RwLock};

use axum::body::Bytes;
use axum::extract::{Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;

use super::DEFAULT_MAX_ROWS;
use crate::interchange;
use crate::ontology::ingest_document;
use crate::query;
use crate::schema;
use crate::store::{snapshot, PropertyGraph};

pub struct ServiceState {
    graph: RwLock<PropertyGraph>,
    db_path: Option<PathBuf>,
    max_rows: usize,
}

impl ServiceState {
    pub fn new(graph: PropertyGraph, db_path: Option<PathBuf>) -> ServiceState {
        ServiceState {
            graph: RwLock::new(graph),
            db_path,
            max_rows: DEFAULT_MAX_ROWS,
        }
    }

    pub fn with_max_rows(mut self, max_rows: usize) -> ServiceState {
        self.max_rows = max_rows;
        self
    }
}

pub fn router(state: Arc<ServiceState>) -> Router {
    Router::new()
        .route("/api/documents", post(post_document))
        .route("/api/query", post(post_query))
        .route("/api/stats", get(get_stats))
        .route("/api/graph", get(get_graph))
        .route("/health", get(|| async { "ok" }))
        .with_state(state)
}

/// Serves until the process ends. The listener binds before the first
/// request is accepted; `bound` receives the actual address.
pub async fn serve(
    state: Arc<ServiceState>,
    addr: SocketAddr,
    bound: Option<tokio::sync::oneshot::Sender<SocketAddr>>,
) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    if let Some(tx) = bound {
        let _ = tx.send(listener.local_addr()?);
    }
    axum::serve(listener, router(state)).await
}

fn error_body(message: impl Into<String>) -> serde_json::Value {
    serde_json::json!({ "error": message.into() })
}

async fn post_document(State(state): State<Arc<ServiceState>>, body: Bytes) -> Response {
    let raw = match std::str::from_utf8(&body) {
        Ok(raw) => raw,
        Err(_) => {
            return (
                StatusCode::BAD_REQUEST,
                Json(error_body("request body is not UTF-8")),
            )
                .into_response()
        }
    };
    let report = schema::validate_document(raw);
    if !report.valid {
        return (StatusCode::UNPROCESSABLE_ENTITY, Json(report)).into_response();
    }
    let doc = match schema::parse_document(raw) {
        Ok(doc) => doc,
        Err(e) => {
            return (
                StatusCode::UNPROCESSABLE_ENTITY,
                Json(error_body(e.to_string())),
            )
                .into_response()
        }
    };
    let mut graph = state.graph.write().expect("graph lock");
    let before = graph.clone();
    let ingest = match ingest_document(&mut graph, &doc) {
        Ok(report) => report,
        Err(e) => {
            *graph = before;
            return (
                StatusCode::INTERNAL_SERVER_ERROR,
                Json(error_body(e.to_string())),
            )
                .into_response();
        }
    };
    if let Some(path) = &state.db_path {
        if let Err(e) = snapshot::save(&graph, path) {
            *graph = before;
            return (
                StatusCode::INTERNAL_SERVER_ERROR,
                Json(error_body(format!("snapshot save failed: {}", e))),
            )
                .into_response();
        }
    }
    (StatusCode::OK, Json(ingest)).into_response()
}

#[derive(Deserialize)]
struct QueryRequest {
    query: String,
}

async fn post_query(State(state): State<Arc<ServiceState>>, body: Bytes) -> Response {
    let request: QueryRequest = match serde_json::from_slice(&body) {
        Ok(request) => request,
        Err(e) => {
            return (
                StatusCode::BAD_REQUEST,
                Json(error_body(format!("malformed request body: {}", e))),
            )
                .into_response()
        }
    };
    let ast = match query::parse(&request.query) {
        Ok(ast) => ast,
        Err(e) => {
            return (
                StatusCode::BAD_REQUEST,
                Json(serde_json::json!({
                    "error": e.to_string(),
                    "line": e.line,
                    "column": e.column,
                })),
            )
                .into_response()
        }
    };
    let graph = state.graph.read().expect("graph lock");
    let mut table = query::execute(&graph, &ast);
    if ast.limit.is_none() && table.rows.len() > state.max_rows {
        table.rows.truncate(state.max_rows);
    }
    (StatusCode::OK, Json(super::render::to_json(&table))).into_response()
}

async fn get_stats(State(state): State<Arc<ServiceState>>) -> Response {
    let graph = state.graph.read().expect("graph lock");
    Json(graph.stats()).into_response()
}

#[derive(Deserialize)]
struct GraphQuery {
    format: Option<String>,
}

async fn get_graph(
    State(state): State<Arc<ServiceState>>,
    Query(params): Query<GraphQuery>,
) -> Response {
    let graph = state.graph.read().expect("graph lock");
    match params.format.as_deref() {
        Some("dot") => (
            StatusCode::OK,
            [(header::CONTENT_TYPE, "text/vnd.graphviz")],
            interchange::export_dot(&graph),
        )
            .into_response(),
        Some("graphml") => (
            StatusCode::OK,
            [(header::CONTENT_TYPE, "application/graphml+xml")],
            interchange::export_graphml(&graph),
        )
            .into_response(),
        other => (
            StatusCode::BAD_REQUEST,
            Json(error_body(format!(
                "format must be graphml or dot, got {}",
                other.unwrap_or("nothing")
            ))),
        )
            .into_response(),
    }
}
