//! Corpus handling, caching, report generation and the survey runner behind `fpcoh`.

pub mod cache;
pub mod cli;
pub mod commands;
pub mod corpus;
pub mod report;
pub mod survey;

pub use cache::Cache;
pub use corpus::{Corpus, CorpusEntry};
pub use report::{Envelope, Provenance, Status};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] fpcoh_core::Error),
    #[error("io error: {0}")]
    Io(String),
    #[error("usage: {0}")]
    Usage(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl CliError {
    /// 1 validation, 2 resource cap, 3 internal invariant violation.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => e.exit_code(),
            CliError::Io(_) | CliError::Usage(_) => 1,
        }
    }
}

/// Settings shared by every command.
#[derive(Debug, Clone)]
pub struct Options {
    pub cache: Cache,
    /// Largest module dimension attempted.
    pub max_dim: usize,
    pub jobs: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { cache: Cache::disabled(), max_dim: fpcoh_core::congruence::DEFAULT_INDEX_CAP, jobs: 1 }
    }
}
