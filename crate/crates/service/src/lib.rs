//! HTTP service for vocabulary design tasks.
//!
//! Tasks are spec documents kept under `<data_dir>/tasks`; grammar files
//! referenced by a task resolve relative to that directory. Every answered
//! attempt is appended to `<data_dir>/attempts/<task_id>.jsonl` before the
//! response is sent.
//!
//! | method | path | body | response |
//! |---|---|---|---|
//! | POST | `/v1/tasks` | spec XML | `201 {"task_id"}` |
//! | GET | `/v1/tasks` | | task summaries |
//! | GET | `/v1/tasks/{id}` | | scenario, logic and allowed symbol kinds |
//! | POST | `/v1/tasks/{id}/attempts` | attempt JSON | verdict |
//! | GET | `/v1/tasks/{id}/attempts` | | attempt records |

pub mod log;
pub mod record;
mod routes;

use std::collections::BTreeMap;
use std::io;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use thiserror::Error;
use vocab_bridge_core::spec::SpecError;
use vocab_bridge_core::{load_task_spec, validate_spec, TaskSpec};

pub use log::AttemptLog;
pub use record::{parse_log, replay_log, AttemptRecord, MappingSummary, ReplayOutcome};
pub use routes::router;

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("task file {path}: {source}")]
    Spec { path: PathBuf, source: SpecError },
    #[error("task file {path} is inconsistent: {diagnostics}")]
    Invalid { path: PathBuf, diagnostics: String },
    #[error("task id `{id}` is declared by both {first} and {second}")]
    DuplicateTask {
        id: String,
        first: PathBuf,
        second: PathBuf,
    },
    #[error("task id `{0}` may only contain letters, digits, `-`, `_` and `.`")]
    BadTaskId(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Shared state: the loaded tasks and the attempt log.
#[derive(Debug)]
pub struct AppState {
    tasks_dir: PathBuf,
    tasks: RwLock<BTreeMap<String, Arc<TaskSpec>>>,
    uploads: tokio::sync::Mutex<()>,
    log: AttemptLog,
}

impl AppState {
    /// Opens a data directory, loading every `tasks/*.xml` it contains.
    pub fn open(data_dir: &Path) -> Result<Self, ServiceError> {
        let tasks_dir = data_dir.join("tasks");
        std::fs::create_dir_all(&tasks_dir)?;
        let mut files: Vec<PathBuf> = std::fs::read_dir(&tasks_dir)?
            .map(|e| e.map(|e| e.path()))
            .collect::<Result<_, _>>()?;
        files.retain(|p| p.extension().is_some_and(|e| e == "xml"));
        files.sort();

        let mut tasks = BTreeMap::new();
        let mut origin: BTreeMap<String, PathBuf> = BTreeMap::new();
        for path in files {
            let spec = load_task_spec(&path).map_err(|source| ServiceError::Spec {
                path: path.clone(),
                source,
            })?;
            check_task_id(&spec.id)?;
            let diagnostics = validate_spec(&spec);
            if !diagnostics.is_empty() {
                return Err(ServiceError::Invalid {
                    path,
                    diagnostics: join(&diagnostics),
                });
            }
            if let Some(first) = origin.get(&spec.id) {
                return Err(ServiceError::DuplicateTask {
                    id: spec.id.clone(),
                    first: first.clone(),
                    second: path,
                });
            }
            tracing::info!(task = %spec.id, path = %path.display(), "loaded task");
            origin.insert(spec.id.clone(), path);
            tasks.insert(spec.id.clone(), Arc::new(spec));
        }
        Ok(AppState {
            tasks_dir,
            tasks: RwLock::new(tasks),
            uploads: tokio::sync::Mutex::new(()),
            log: AttemptLog::open(&data_dir.join("attempts"))?,
        })
    }

    pub fn task(&self, id: &str) -> Option<Arc<TaskSpec>> {
        self.tasks.read().expect("task table poisoned").get(id).cloned()
    }

    pub fn task_ids(&self) -> Vec<String> {
        self.tasks.read().expect("task table poisoned").keys().cloned().collect()
    }

    pub fn log(&self) -> &AttemptLog {
        &self.log
    }

    fn tasks_snapshot(&self) -> Vec<Arc<TaskSpec>> {
        self.tasks.read().expect("task table poisoned").values().cloned().collect()
    }
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join("; ")
}

/// Task ids double as file names.
pub fn check_task_id(id: &str) -> Result<(), ServiceError> {
    let ok = !id.is_empty()
        && !id.starts_with('.')
        && id.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'));
    if ok {
        Ok(())
    } else {
        Err(ServiceError::BadTaskId(id.to_string()))
    }
}

/// Serves the API on `addr` until the process stops.
pub async fn serve(addr: SocketAddr, data_dir: &Path) -> Result<(), ServiceError> {
    let state = Arc::new(AppState::open(data_dir)?);
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!(addr = %listener.local_addr()?, "listening");
    axum::serve(listener, router(state)).await?;
    Ok(())
}
