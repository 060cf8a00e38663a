//! Append-only JSON-lines cache of solver results.
//!
//! Entries are keyed by command, parameters and a hash of the solver
//! configuration. The tolerance is kept out of the hash and stored instead,
//! so an entry solved to a tolerance at least as tight as the request is
//! reused and a looser one never is.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::solver::SolverConfig;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub command: String,
    pub params: Value,
    pub config_hash: String,
    pub tolerance: f64,
    pub result: Value,
}

/// SHA-256 over the configuration with the tolerance removed.
pub fn solver_config_hash(cfg: &SolverConfig) -> String {
    let mut value = serde_json::to_value(cfg).expect("config serializes");
    if let Value::Object(map) = &mut value {
        map.remove("t_tolerance");
    }
    // serde_json maps are sorted, so this text is canonical
    let text = serde_json::to_string(&value).expect("config serializes");
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug)]
pub struct ResultCache {
    path: PathBuf,
}

impl ResultCache {
    pub fn new(path: impl AsRef<Path>) -> Self {
        ResultCache {
            path: path.as_ref().to_path_buf(),
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// The most recent usable entry. Unreadable lines are skipped.
    pub fn lookup(
        &self,
        command: &str,
        params: &Value,
        config_hash: &str,
        tolerance: f64,
    ) -> Result<Option<Value>> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let mut found = None;
        for line in BufReader::new(file).lines() {
            let line = line?;
            let Ok(entry) = serde_json::from_str::<CacheEntry>(&line) else {
                continue;
            };
            if entry.command == command
                && &entry.params == params
                && entry.config_hash == config_hash
                && entry.tolerance <= tolerance
            {
                found = Some(entry.result);
            }
        }
        Ok(found)
    }

    pub fn append(&self, entry: &CacheEntry) -> Result<()> {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        let mut line = serde_json::to_string(entry)?;
        line.push('\n');
        file.write_all(line.as_bytes())?;
        Ok(())
    }
}
