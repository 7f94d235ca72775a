//! The append-only attempt log. All writes go through one thread, which
//! acknowledges each record once it is on disk.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::thread;

use tokio::sync::{mpsc, oneshot};

use crate::record::AttemptRecord;

type Job = (String, oneshot::Sender<io::Result<()>>, String);

#[derive(Debug, Clone)]
pub struct AttemptLog {
    dir: PathBuf,
    tx: mpsc::UnboundedSender<Job>,
}

impl AttemptLog {
    pub fn open(dir: &Path) -> io::Result<Self> {
        std::fs::create_dir_all(dir)?;
        let (tx, mut rx) = mpsc::unbounded_channel::<Job>();
        let root = dir.to_path_buf();
        thread::Builder::new()
            .name("attempt-log".into())
            .spawn(move || {
                let mut files: HashMap<String, File> = HashMap::new();
                while let Some((task_id, ack, line)) = rx.blocking_recv() {
                    let result = append(&root, &mut files, &task_id, &line);
                    if result.is_err() {
                        files.remove(&task_id);
                    }
                    let _ = ack.send(result);
                }
            })?;
        Ok(AttemptLog {
            dir: dir.to_path_buf(),
            tx,
        })
    }

    pub fn path(&self, task_id: &str) -> PathBuf {
        log_path(&self.dir, task_id)
    }

    /// Appends one record and waits until it has been written.
    pub async fn append(&self, record: &AttemptRecord) -> io::Result<()> {
        let mut line = serde_json::to_string(record).map_err(io::Error::other)?;
        line.push('\n');
        let (ack, done) = oneshot::channel();
        self.tx
            .send((record.task_id.clone(), ack, line))
            .map_err(|_| io::Error::other("attempt log writer has stopped"))?;
        done.await
            .map_err(|_| io::Error::other("attempt log writer has stopped"))?
    }

    /// The raw log of a task; empty if nothing was recorded yet.
    pub fn read(&self, task_id: &str) -> io::Result<String> {
        match std::fs::read_to_string(self.path(task_id)) {
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(String::new()),
            other => other,
        }
    }
}

fn log_path(dir: &Path, task_id: &str) -> PathBuf {
    dir.join(format!("{task_id}.jsonl"))
}

fn append(dir: &Path, files: &mut HashMap<String, File>, task_id: &str, line: &str) -> io::Result<()> {
    let file = match files.entry(task_id.to_string()) {
        std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
        std::collections::hash_map::Entry::Vacant(e) => e.insert(
            OpenOptions::new()
                .create(true)
                .append(true)
                .open(log_path(dir, task_id))?,
        ),
    };
    file.write_all(line.as_bytes())?;
    file.sync_data()
}
