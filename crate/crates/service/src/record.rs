//! Persisted attempt records and their replay.

use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;
use vocab_bridge_core::{check_attempt, Attempt, Category, MatchError, Status, TaskSpec, Verdict};

/// One line of a task's attempt log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttemptRecord {
    pub task_id: String,
    /// UTC, RFC 3339.
    pub timestamp: String,
    pub attempt: Attempt,
    pub mapping: Vec<MappingSummary>,
    pub status: Status,
    pub feedback: Vec<String>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingSummary {
    pub student: String,
    pub matched: Option<String>,
    pub category: Category,
}

impl AttemptRecord {
    pub fn new(task_id: &str, attempt: Attempt, verdict: Verdict) -> Self {
        let mapping = verdict
            .per_symbol
            .iter()
            .map(|s| MappingSummary {
                student: s.name.clone(),
                matched: s.matched.clone(),
                category: s.category,
            })
            .collect();
        AttemptRecord {
            task_id: task_id.to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true),
            attempt,
            mapping,
            status: verdict.status,
            feedback: verdict.messages().into_iter().map(str::to_string).collect(),
            verdict,
        }
    }
}

/// Borrowed view of a log line that keeps the stored verdict as raw JSON.
#[derive(Deserialize)]
struct StoredLine<'a> {
    attempt: Attempt,
    #[serde(borrow)]
    verdict: &'a RawValue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReplayOutcome {
    Identical,
    Differs { stored: String, replayed: String },
}

#[derive(Debug, thiserror::Error)]
pub enum ReplayError {
    #[error("line {line}: {source}")]
    Malformed {
        line: usize,
        source: serde_json::Error,
    },
    #[error("line {line}: {source}")]
    Engine { line: usize, source: MatchError },
}

/// Re-checks every record of a log against `spec` and compares the fresh
/// verdict with the stored one byte for byte.
pub fn replay_log(spec: &TaskSpec, log: &str) -> Result<Vec<ReplayOutcome>, ReplayError> {
    let mut out = Vec::new();
    for (i, line) in complete_lines(log).enumerate() {
        let stored: StoredLine =
            serde_json::from_str(line).map_err(|source| ReplayError::Malformed { line: i + 1, source })?;
        let verdict = check_attempt(&stored.attempt, spec)
            .map_err(|source| ReplayError::Engine { line: i + 1, source })?;
        let replayed = serde_json::to_string(&verdict).expect("verdicts serialize");
        out.push(if replayed == stored.verdict.get() {
            ReplayOutcome::Identical
        } else {
            ReplayOutcome::Differs {
                stored: stored.verdict.get().to_string(),
                replayed,
            }
        });
    }
    Ok(out)
}

/// Parses a log, skipping a trailing line whose write is still in flight.
pub fn parse_log(log: &str) -> Result<Vec<AttemptRecord>, serde_json::Error> {
    complete_lines(log).map(serde_json::from_str).collect()
}

fn complete_lines(log: &str) -> impl Iterator<Item = &str> {
    let end = log.rfind('\n').map_or(0, |i| i + 1);
    log[..end].lines().filter(|l| !l.trim().is_empty())
}
