use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use serde::Serialize;
use serde_json::json;
use vocab_bridge_core::spec::Logic;
use vocab_bridge_core::{check_attempt, parse_task_spec, validate_spec, Attempt, MatchError, TaskSpec};

use crate::record::{parse_log, AttemptRecord};
use crate::{check_task_id, join, AppState};

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/v1/tasks", get(list_tasks).post(create_task))
        .route("/v1/tasks/{id}", get(get_task))
        .route("/v1/tasks/{id}/attempts", get(list_attempts).post(submit_attempt))
        .with_state(state)
}

struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(json!({ "error": self.1 }))).into_response()
    }
}

fn unprocessable(message: impl ToString) -> ApiError {
    ApiError(StatusCode::UNPROCESSABLE_ENTITY, message.to_string())
}

fn internal(message: impl ToString) -> ApiError {
    ApiError(StatusCode::INTERNAL_SERVER_ERROR, message.to_string())
}

fn lookup(state: &AppState, id: &str) -> Result<Arc<TaskSpec>, ApiError> {
    state
        .task(id)
        .ok_or_else(|| ApiError(StatusCode::NOT_FOUND, format!("unknown task `{id}`")))
}

#[derive(Serialize)]
struct TaskView {
    task_id: String,
    scenario: String,
    logic: Logic,
    kinds: &'static [&'static str],
}

impl TaskView {
    fn of(spec: &TaskSpec) -> Self {
        TaskView {
            task_id: spec.id.clone(),
            scenario: spec.scenario.clone(),
            logic: spec.logic,
            kinds: match spec.logic {
                Logic::Propositional => &["proposition"],
                Logic::FirstOrder => &["relation", "function", "constant"],
            },
        }
    }
}

async fn list_tasks(State(state): State<Arc<AppState>>) -> Json<Vec<TaskView>> {
    Json(state.tasks_snapshot().iter().map(|s| TaskView::of(s)).collect())
}

async fn get_task(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> Result<Json<TaskView>, ApiError> {
    let spec = lookup(&state, &id)?;
    Ok(Json(TaskView::of(&spec)))
}

async fn create_task(
    State(state): State<Arc<AppState>>,
    body: String,
) -> Result<(StatusCode, Json<serde_json::Value>), ApiError> {
    let mut spec = parse_task_spec(&body).map_err(unprocessable)?;
    check_task_id(&spec.id).map_err(unprocessable)?;
    let diagnostics = validate_spec(&spec);
    if !diagnostics.is_empty() {
        return Err(unprocessable(join(&diagnostics)));
    }

    let _guard = state.uploads.lock().await;
    if state.task(&spec.id).is_some() {
        return Err(ApiError(
            StatusCode::CONFLICT,
            format!("task `{}` already exists", spec.id),
        ));
    }
    let dir = state.tasks_dir.clone();
    let stored = tokio::task::spawn_blocking(move || {
        spec.resolve_grammars(&dir).map_err(unprocessable)?;
        let path = dir.join(format!("{}.xml", spec.id));
        let partial = dir.join(format!(".{}.xml.partial", spec.id));
        std::fs::write(&partial, body.as_bytes())
            .and_then(|()| std::fs::rename(&partial, &path))
            .map_err(internal)?;
        Ok::<_, ApiError>(spec)
    })
    .await
    .map_err(internal)??;

    let id = stored.id.clone();
    tracing::info!(task = %id, "task created");
    state
        .tasks
        .write()
        .expect("task table poisoned")
        .insert(id.clone(), Arc::new(stored));
    Ok((StatusCode::CREATED, Json(json!({ "task_id": id }))))
}

async fn submit_attempt(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Response, ApiError> {
    let spec = lookup(&state, &id)?;
    let attempt: Attempt = serde_json::from_slice(&body).map_err(unprocessable)?;
    attempt.validate().map_err(unprocessable)?;

    let checked = attempt.clone();
    let verdict = tokio::task::spawn_blocking(move || check_attempt(&checked, &spec))
        .await
        .map_err(internal)?
        .map_err(|e| match e {
            MatchError::Invalid(e) => unprocessable(e),
            MatchError::Scorer(e) => ApiError(StatusCode::SERVICE_UNAVAILABLE, e.to_string()),
        })?;

    let record = AttemptRecord::new(&id, attempt, verdict);
    state.log.append(&record).await.map_err(internal)?;
    Ok(Json(record.verdict).into_response())
}

async fn list_attempts(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> Result<Json<Vec<AttemptRecord>>, ApiError> {
    lookup(&state, &id)?;
    let raw = state.log.read(&id).map_err(internal)?;
    Ok(Json(parse_log(&raw).map_err(internal)?))
}
