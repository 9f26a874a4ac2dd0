use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cluster is empty")]
    EmptyCluster,

    #[error("invalid pdf: {0}")]
    InvalidPdf(String),

    #[error("degenerate support: {0}")]
    DegenerateSupport(String),

    #[error("sampling failed: {0}")]
    Sampling(String),

    #[error("cannot remove an object from an empty cluster")]
    Underflow,

    #[error("exhaustive enumeration limited to {max} objects, got {n}")]
    EnumerationGuard { n: usize, max: usize },

    #[error("parse error at row {row}, column {column}: {message}")]
    Parse {
        row: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn dims(expected: usize, found: usize) -> Self {
        Error::DimensionMismatch { expected, found }
    }
}
