use std::path::PathBuf;

use thiserror::Error;

use crate::qn::ChainDefect;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("table parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("malformed table: {0}")]
    Malformed(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("table is not a quadratical quasigroup")]
    NotQuadratical,

    #[error("H-chain defect: {0}")]
    Chain(ChainDefect),

    #[error("ordering search refused: order {order} exceeds the cap of {cap}")]
    CapExceeded { order: usize, cap: usize },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("corrupt checkpoint {path}: {msg}")]
    Checkpoint { path: PathBuf, msg: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
