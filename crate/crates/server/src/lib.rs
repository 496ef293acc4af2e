//! Axum service exposing the polar-map operations over HTTP/JSON.
//!
//! One POST endpoint per operation under `/v1/`, a batch endpoint
//! `/v1/jobs` taking an array of jobs, and `/healthz`. Identical requests
//! produce byte-identical reports up to the `timing_ms` field.

use std::sync::Arc;
use std::time::Instant;

use axum::extract::State;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use polarmap_api as api;
use polarmap_core::ErrorClass;
use serde_json::{json, Value};
use tokio::net::TcpListener;

pub mod ops;

use ops::BaseLimits;

#[derive(Clone)]
pub struct AppState {
    pub limits: Arc<BaseLimits>,
}

pub fn router(limits: BaseLimits) -> Router {
    let state = AppState {
        limits: Arc::new(limits),
    };
    Router::new()
        .route("/healthz", get(health))
        .route("/v1/jobs", post(run_batch))
        .route("/v1/{command}", post(run_single))
        .with_state(state)
}

/// Binds and serves until the task is dropped.
pub async fn serve(listener: TcpListener, limits: BaseLimits) -> std::io::Result<()> {
    axum::serve(listener, router(limits)).await
}

async fn health() -> Json<Value> {
    Json(json!({"ok": true}))
}

async fn run_single(
    State(state): State<AppState>,
    axum::extract::Path(command): axum::extract::Path<String>,
    Json(mut body): Json<Value>,
) -> Response {
    // the path names the command; inject the tag so bodies stay flat
    if let Value::Object(map) = &mut body {
        map.insert("command".into(), Value::String(command.clone()));
    }
    let job: api::JobSpec = match serde_json::from_value(body) {
        Ok(job) => job,
        Err(err) => {
            return error_response(
                StatusCode::BAD_REQUEST,
                "parse",
                &format!("bad request for {}: {}", command, err),
            );
        }
    };
    match run_job(state.limits.clone(), job).await {
        Ok(report) => (StatusCode::OK, Json(report)).into_response(),
        Err((status, class, message)) => error_response(status, class, &message),
    }
}

async fn run_batch(
    State(state): State<AppState>,
    Json(jobs): Json<Vec<api::JobSpec>>,
) -> Response {
    let mut handles = Vec::with_capacity(jobs.len());
    for job in jobs {
        let limits = state.limits.clone();
        handles.push(tokio::spawn(run_job(limits, job)));
    }
    let mut out: Vec<Value> = Vec::with_capacity(handles.len());
    for handle in handles {
        match handle.await {
            Ok(Ok(report)) => out.push(serde_json::to_value(report).expect("report")),
            Ok(Err((_, class, message))) => out.push(json!({
                "error": {"class": class, "message": message}
            })),
            Err(join_err) => out.push(json!({
                "error": {"class": "resource", "message": join_err.to_string()}
            })),
        }
    }
    (StatusCode::OK, Json(out)).into_response()
}

async fn run_job(
    limits: Arc<BaseLimits>,
    job: api::JobSpec,
) -> Result<api::Report, (StatusCode, &'static str, String)> {
    let start = Instant::now();
    let command = job.command_name().to_string();
    let outcome = tokio::task::spawn_blocking(move || ops::execute(&job, &limits))
        .await
        .map_err(|err| {
            (
                StatusCode::INTERNAL_SERVER_ERROR,
                "resource",
                err.to_string(),
            )
        })?;
    match outcome {
        Ok(outcome) => Ok(api::Report {
            schema_version: api::SCHEMA_VERSION.into(),
            command,
            result: outcome.result,
            warnings: outcome.warnings,
            timing_ms: start.elapsed().as_millis() as u64,
        }),
        Err(err) => {
            let class = err.class();
            let status = match class {
                ErrorClass::Parse => StatusCode::BAD_REQUEST,
                ErrorClass::Resource => StatusCode::SERVICE_UNAVAILABLE,
                _ => StatusCode::UNPROCESSABLE_ENTITY,
            };
            Err((status, class.as_str(), err.to_string()))
        }
    }
}

fn error_response(status: StatusCode, class: &str, message: &str) -> Response {
    (
        status,
        Json(api::ErrorBody {
            error: api::ApiError {
                class: class.into(),
                message: message.into(),
            },
        }),
    )
        .into_response()
}
