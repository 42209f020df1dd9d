use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::CliError;

pub const CODE_VERSION: &str = concat!("fpcoh-", env!("CARGO_PKG_VERSION"));

/// Flat-file JSON cache keyed by a content hash; writes go through a temporary
/// file and an atomic rename.
#[derive(Debug, Clone, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Cache {
        Cache { dir }
    }

    pub fn disabled() -> Cache {
        Cache { dir: None }
    }

    pub fn key(material: &impl Serialize) -> String {
        let json = serde_json::to_string(&(CODE_VERSION, material)).expect("key material serializes");
        hex::encode(Sha256::digest(json.as_bytes()))
    }

    /// Returns the cached document for `material`, computing and storing it on a miss.
    pub fn get_or_compute(
        &self,
        material: &impl Serialize,
        compute: impl FnOnce() -> Result<String, CliError>,
    ) -> Result<String, CliError> {
        let Some(dir) = &self.dir else { return compute() };
        let path = dir.join(format!("{}.json", Cache::key(material)));
        if let Ok(text) = std::fs::read_to_string(&path) {
            return Ok(text);
        }
        let text = compute()?;
        std::fs::create_dir_all(dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(text.as_bytes())?;
        tmp.persist(&path).map_err(|e| CliError::Io(e.error.to_string()))?;
        Ok(text)
    }
}
