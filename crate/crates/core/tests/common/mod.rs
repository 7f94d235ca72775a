#![allow(dead_code)]

use std::path::PathBuf;

use vocab_bridge_core::{load_task_spec, Attempt, TaskSpec};

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn task(name: &str) -> TaskSpec {
    let path = fixtures().join("tasks").join(format!("{name}.xml"));
    load_task_spec(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn attempt(name: &str) -> Attempt {
    let path = fixtures().join("attempts").join(format!("{name}.json"));
    let text = std::fs::read_to_string(&path).unwrap();
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}
