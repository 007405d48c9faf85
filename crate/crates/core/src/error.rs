use std::path::PathBuf;

use thiserror::Error;

/// Errors produced across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the domain of an operation (probability outside
    /// (0,1], vertex label out of range, time before birth, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid model or experiment parameters, detected before any sampling.
    #[error("configuration error: {0}")]
    Config(String),

    /// The operation needs state the value does not have (e.g. weights).
    #[error("state error: {0}")]
    State(String),

    /// Not enough data for a statistical estimate.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// Refusal to start an experiment that would not fit in memory.
    #[error("resource refusal: {0}")]
    Resource(String),

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit status for the CLI: 2 for configuration/validation
    /// problems, 3 for resource refusals, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_)
            | Error::Domain(_)
            | Error::Parse { .. }
            | Error::Json(_)
            | Error::State(_)
            | Error::InsufficientData(_) => 2,
            Error::Resource(_) => 3,
            Error::Io { .. } => 1,
        }
    }

    /// Short machine-readable category name.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Config(_) => "config",
            Error::State(_) => "state",
            Error::InsufficientData(_) => "insufficient_data",
            Error::Resource(_) => "resource",
            Error::Parse { .. } => "parse",
            Error::Io { .. } => "io",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
