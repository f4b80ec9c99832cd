//! Run stores: append-only persistence and resume for executed runs.
//!
//! The on-disk format is JSONL — one [`crate::executor::RunRecord`]
//! per line, UTF-8, keys in fixed order. The file is the unit of resume: any
//! run whose id is present is never executed again. A trailing partial line
//! (from a killed process) is discarded on open so appends stay well-formed.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use thiserror::Error;

use crate::executor::RunRecord;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("store I/O error at {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("corrupt run record on line {line} of {path}: {source}")]
    Corrupt {
        path: PathBuf,
        line: usize,
        #[source]
        source: serde_json::Error,
    },
}

/// Append-only storage of run records, indexed by run id. Appends are
/// serialized internally, so a store can be shared across worker threads.
pub trait RunStore: Send + Sync {
    fn contains(&self, run_id: &str) -> bool;
    fn get(&self, run_id: &str) -> Option<RunRecord>;
    fn append(&self, record: &RunRecord) -> Result<(), StoreError>;
    /// All records in insertion order.
    fn records(&self) -> Vec<RunRecord>;
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Default)]
struct MemoryInner {
    order: Vec<String>,
    by_id: HashMap<String, RunRecord>,
}

/// In-memory store; useful for tests and for the run-count search.
#[derive(Default)]
pub struct MemoryStore {
    inner: Mutex<MemoryInner>,
}

impl MemoryStore {
    pub fn new() -> Self {
        Self::default()
    }
}

impl RunStore for MemoryStore {
    fn contains(&self, run_id: &str) -> bool {
        self.inner.lock().unwrap().by_id.contains_key(run_id)
    }

    fn get(&self, run_id: &str) -> Option<RunRecord> {
        self.inner.lock().unwrap().by_id.get(run_id).cloned()
    }

    fn append(&self, record: &RunRecord) -> Result<(), StoreError> {
        let mut inner = self.inner.lock().unwrap();
        if inner
            .by_id
            .insert(record.run_id.clone(), record.clone())
            .is_none()
        {
            inner.order.push(record.run_id.clone());
        }
        Ok(())
    }

    fn records(&self) -> Vec<RunRecord> {
        let inner = self.inner.lock().unwrap();
        inner
            .order
            .iter()
            .map(|id| inner.by_id[id].clone())
            .collect()
    }

    fn len(&self) -> usize {
        self.inner.lock().unwrap().order.len()
    }
}

struct JsonlInner {
    file: File,
    order: Vec<String>,
    by_id: HashMap<String, RunRecord>,
}

/// JSONL-backed store.
pub struct JsonlStore {
    path: PathBuf,
    inner: Mutex<JsonlInner>,
}

impl JsonlStore {
    /// Opens (or creates) a JSONL store, loading any existing records. If
    /// the file does not end with a newline — a crash mid-append — the
    /// partial tail is truncated away before appending resumes.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, StoreError> {
        let path = path.as_ref().to_path_buf();
        let io_err = |source| StoreError::Io {
            path: path.clone(),
            source,
        };
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent).map_err(io_err)?;
            }
        }
        let mut file = OpenOptions::new()
            .create(true)
            .read(true)
            .append(true)
            .open(&path)
            .map_err(io_err)?;

        // recover from a torn final line
        file.seek(SeekFrom::Start(0)).map_err(io_err)?;
        let mut contents = Vec::new();
        file.read_to_end(&mut contents).map_err(io_err)?;
        let valid_len = match contents.iter().rposition(|&b| b == b'\n') {
            Some(pos) => pos + 1,
            None => 0,
        };
        if valid_len < contents.len() {
            log::warn!(
                "discarding {} bytes of torn trailing record in {}",
                contents.len() - valid_len,
                path.display()
            );
            file.set_len(valid_len as u64).map_err(io_err)?;
            contents.truncate(valid_len);
        }

        let mut order = Vec::new();
        let mut by_id = HashMap::new();
        for (i, line) in BufReader::new(&contents[..]).lines().enumerate() {
            let line = line.map_err(io_err)?;
            if line.trim().is_empty() {
                continue;
            }
            let record: RunRecord =
                serde_json::from_str(&line).map_err(|source| StoreError::Corrupt {
                    path: path.clone(),
                    line: i + 1,
                    source,
                })?;
            if by_id
                .insert(record.run_id.clone(), record.clone())
                .is_none()
            {
                order.push(record.run_id.clone());
            }
        }
        file.seek(SeekFrom::End(0)).map_err(io_err)?;
        Ok(Self {
            path,
            inner: Mutex::new(JsonlInner { file, order, by_id }),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }
}

impl RunStore for JsonlStore {
    fn contains(&self, run_id: &str) -> bool {
        self.inner.lock().unwrap().by_id.contains_key(run_id)
    }

    fn get(&self, run_id: &str) -> Option<RunRecord> {
        self.inner.lock().unwrap().by_id.get(run_id).cloned()
    }

    fn append(&self, record: &RunRecord) -> Result<(), StoreError> {
        let mut inner = self.inner.lock().unwrap();
        let mut line = serde_json::to_string(record).expect("run records always serialize");
        line.push('\n');
        inner
            .file
            .write_all(line.as_bytes())
            .and_then(|_| inner.file.flush())
            .map_err(|source| StoreError::Io {
                path: self.path.clone(),
                source,
            })?;
        if inner
            .by_id
            .insert(record.run_id.clone(), record.clone())
            .is_none()
        {
            inner.order.push(record.run_id.clone());
        }
        Ok(())
    }

    fn records(&self) -> Vec<RunRecord> {
        let inner = self.inner.lock().unwrap();
        inner
            .order
            .iter()
            .map(|id| inner.by_id[id].clone())
            .collect()
    }

    fn len(&self) -> usize {
        self.inner.lock().unwrap().order.len()
    }
}
