use std::time::Duration;

use serde::{Deserialize, Serialize};
use url::Url;

use super::{ScoreResult, SimilarityError};
use crate::vocab::Category;

pub const REMOTE_TIMEOUT: Duration = Duration::from_secs(10);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScorePair {
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreRequest {
    pub pairs: Vec<ScorePair>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreResponse {
    pub scores: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub categories: Option<Vec<Category>>,
}

#[derive(Debug, Deserialize)]
struct Health {
    status: String,
}

/// Client for a scorer reachable over HTTP.
#[derive(Debug, Clone)]
pub struct RemoteScorer {
    endpoint: Url,
    client: reqwest::blocking::Client,
}

impl RemoteScorer {
    pub fn new(endpoint: Url) -> Self {
        let client = reqwest::blocking::Client::builder()
            .timeout(REMOTE_TIMEOUT)
            .build()
            .expect("HTTP client configuration is static");
        RemoteScorer { endpoint, client }
    }

    pub fn endpoint(&self) -> &Url {
        &self.endpoint
    }

    fn url(&self, path: &str) -> String {
        format!("{}/{path}", self.endpoint.as_str().trim_end_matches('/'))
    }

    fn unavailable(&self, reason: impl ToString) -> SimilarityError {
        SimilarityError::ScorerUnavailable {
            endpoint: self.endpoint.to_string(),
            reason: reason.to_string(),
        }
    }

    pub fn health(&self) -> Result<(), SimilarityError> {
        let resp = self
            .client
            .get(self.url("v1/health"))
            .send()
            .map_err(|e| self.unavailable(e))?;
        if !resp.status().is_success() {
            return Err(self.unavailable(format!("status {}", resp.status())));
        }
        let health: Health = resp.json().map_err(|e| self.unavailable(e))?;
        if health.status != "ok" {
            return Err(self.unavailable(format!("health status `{}`", health.status)));
        }
        Ok(())
    }

    /// Scores `(left, right)` pairs in one request, preserving order.
    pub fn score_pairs(&self, pairs: &[(String, String)]) -> Result<Vec<ScoreResult>, SimilarityError> {
        if pairs.is_empty() {
            return Ok(Vec::new());
        }
        let request = ScoreRequest {
            pairs: pairs
                .iter()
                .map(|(l, r)| ScorePair {
                    left: l.clone(),
                    right: r.clone(),
                })
                .collect(),
        };
        let resp = self
            .client
            .post(self.url("v1/score"))
            .json(&request)
            .send()
            .map_err(|e| self.unavailable(e))?;
        if resp.status() != reqwest::StatusCode::OK {
            return Err(self.unavailable(format!("status {}", resp.status())));
        }
        let body: ScoreResponse = resp.json().map_err(|e| self.unavailable(e))?;
        if body.scores.len() != pairs.len() {
            return Err(self.unavailable(format!(
                "expected {} scores, got {}",
                pairs.len(),
                body.scores.len()
            )));
        }
        if let Some(s) = body.scores.iter().find(|s| !(0.0..=1.0).contains(*s)) {
            return Err(self.unavailable(format!("score {s} outside [0, 1]")));
        }
        match body.categories {
            None => Ok(body.scores.into_iter().map(ScoreResult::numeric).collect()),
            Some(cats) if cats.len() == pairs.len() => {
                Ok(cats.into_iter().map(ScoreResult::direct).collect())
            }
            Some(cats) => Err(self.unavailable(format!(
                "expected {} categories, got {}",
                pairs.len(),
                cats.len()
            ))),
        }
    }
}
