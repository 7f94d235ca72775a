#![allow(dead_code)]

use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use vocab_bridge_service::{router, AppState};

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn attempt_json(name: &str) -> serde_json::Value {
    let text = std::fs::read_to_string(fixtures().join("attempts").join(format!("{name}.json"))).unwrap();
    serde_json::from_str(&text).unwrap()
}

/// A data directory holding copies of the fixture tasks and grammars.
pub fn data_dir() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for sub in ["tasks", "grammars"] {
        copy_flat(&fixtures().join(sub), &dir.path().join(sub));
    }
    dir
}

fn copy_flat(from: &Path, to: &Path) {
    std::fs::create_dir_all(to).unwrap();
    for entry in std::fs::read_dir(from).unwrap() {
        let entry = entry.unwrap();
        std::fs::copy(entry.path(), to.join(entry.file_name())).unwrap();
    }
}

pub struct Server {
    pub base: String,
    pub state: Arc<AppState>,
}

pub async fn start(data_dir: &Path) -> Server {
    let state = Arc::new(AppState::open(data_dir).unwrap());
    let listener = tokio::net::TcpListener::bind(SocketAddr::from(([127, 0, 0, 1], 0)))
        .await
        .unwrap();
    let base = format!("http://{}", listener.local_addr().unwrap());
    let app = router(state.clone());
    tokio::spawn(async move { axum::serve(listener, app).await.unwrap() });
    Server { base, state }
}
