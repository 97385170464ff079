use std::path::PathBuf;

/// Errors raised by loading, configuration checks and evaluation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("judgment set is empty (no resolvable pairs)")]
    EmptyJudgments,

    #[error("weight grid is empty")]
    EmptyGrid,

    #[error("cannot sample judgments: {0}")]
    Sampling(String),

    #[error("vector length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn file(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::File {
            path: path.into(),
            source,
        }
    }
}
