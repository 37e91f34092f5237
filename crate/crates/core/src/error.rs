use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("node id {id} out of range for a graph on {n} nodes")]
    NodeOutOfRange { id: usize, n: usize },

    #[error("self-loop on node {0}")]
    SelfLoop(usize),

    #[error("core sequence is not realizable: {0}")]
    Unrealizable(String),

    #[error("a {d}-uniform graph needs at least {} nodes, got {n}", d + 1)]
    TooFewNodes { d: usize, n: usize },

    #[error("slot {slot} outside the proposal range [0, {limit})")]
    SlotOutOfRange { slot: u64, limit: u64 },

    #[error("state space enumeration is limited to {max} nodes, got {n}")]
    EnumerationTooLarge { n: usize, max: usize },

    #[error("{0}")]
    InvalidInput(String),

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
