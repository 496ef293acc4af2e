//! Thin typed client for the polarmap service.

use polarmap_api as api;
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClientError {
    #[error("transport error: {0}")]
    Transport(#[from] reqwest::Error),
    /// The service answered with a typed error; `class` is one of `parse`,
    /// `precondition`, `resource`, `degenerate`.
    #[error("{class} error from service: {message}")]
    Api {
        status: u16,
        class: String,
        message: String,
    },
}

pub struct Client {
    base: String,
    http: reqwest::Client,
}

impl Client {
    pub fn new(base_url: impl Into<String>) -> Self {
        let mut base = base_url.into();
        while base.ends_with('/') {
            base.pop();
        }
        Client {
            base,
            http: reqwest::Client::new(),
        }
    }

    pub fn base_url(&self) -> &str {
        &self.base
    }

    pub async fn health(&self) -> Result<bool, ClientError> {
        let value: Value = self
            .http
            .get(format!("{}/healthz", self.base))
            .send()
            .await?
            .json()
            .await?;
        Ok(value["ok"] == Value::Bool(true))
    }

    /// Runs one job against its endpoint and returns the report.
    pub async fn run(&self, job: &api::JobSpec) -> Result<api::Report, ClientError> {
        // the command travels in the path; strip the tag from the body
        let mut body = serde_json::to_value(job).expect("serializable job");
        if let Value::Object(map) = &mut body {
            map.remove("command");
        }
        let response = self
            .http
            .post(format!("{}{}", self.base, job.endpoint()))
            .json(&body)
            .send()
            .await?;
        let status = response.status();
        if status.is_success() {
            Ok(response.json().await?)
        } else {
            Err(to_api_error(status.as_u16(), response.json().await?))
        }
    }

    /// Runs a batch; per-job failures come back as error objects in order.
    pub async fn run_batch(&self, jobs: &[api::JobSpec]) -> Result<Vec<Value>, ClientError> {
        let response = self
            .http
            .post(format!("{}/v1/jobs", self.base))
            .json(jobs)
            .send()
            .await?;
        let status = response.status();
        if status.is_success() {
            Ok(response.json().await?)
        } else {
            Err(to_api_error(status.as_u16(), response.json().await?))
        }
    }
}

fn to_api_error(status: u16, body: api::ErrorBody) -> ClientError {
    ClientError::Api {
        status,
        class: body.error.class,
        message: body.error.message,
    }
}
