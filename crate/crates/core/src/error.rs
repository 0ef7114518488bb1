use thiserror::Error;

use crate::graph::HeapError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: expected {expected}, found {found}")]
    Shape { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("distance evaluation failed for rows ({row}, {col}): {source}")]
    Pairwise {
        row: usize,
        col: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("sample {row}: {source}")]
    Row {
        row: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("unknown distance {name:?}; valid names: {valid}")]
    UnknownDistance { name: String, valid: String },

    #[error("unknown backend {0:?}; expected `reference` or `optimized`")]
    UnknownBackend(String),

    #[error(transparent)]
    Heap(#[from] HeapError),

    #[error("degenerate training set: {0}")]
    DegenerateTraining(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("unsupported format version {found} (supported: {supported})")]
    Version { found: String, supported: String },

    #[error("class label {0} is absent; labels must cover 1..=max")]
    MissingClass(u32),

    #[error("split error: {0}")]
    Split(String),

    #[error("conversion error: {0}")]
    Conversion(String),

    #[error("degenerate test: {0}")]
    DegenerateTest(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("benchmark plan has no loadable datasets")]
    EmptyPlan,

    #[error("no completed cells to summarize")]
    EmptySummary,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    /// True for failures caused by inputs falling outside a kernel's domain.
    pub fn is_domain(&self) -> bool {
        match self {
            Error::Domain(_) => true,
            Error::Pairwise { source, .. } | Error::Row { source, .. } => source.is_domain(),
            _ => false,
        }
    }
}
