use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    IoOther(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    /// A parse failure attributable to one line of an input file (1-based).
    #[error("line {line}: {reason}")]
    Line { line: usize, reason: String },

    #[error("duplicate candidate handle `{0}`")]
    DuplicateHandle(String),

    #[error("unknown party `{0}` (expected AAP, BJP or INC)")]
    UnknownParty(String),

    #[error("no data: {0}")]
    NoData(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("row count mismatch: {expected} vs {found}")]
    RowMismatch { expected: usize, found: usize },

    #[error("model blob: {0}")]
    Blob(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn line(line: usize, reason: impl Into<String>) -> Self {
        Error::Line {
            line,
            reason: reason.into(),
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
