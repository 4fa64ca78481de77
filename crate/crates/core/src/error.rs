use std::path::PathBuf;

use crate::features::ViewKind;
use crate::norms::PropertyKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse grouping used to pick a process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Config,
    Data,
    Numerical,
}

impl ErrorClass {
    pub fn exit_code(self) -> u8 {
        match self {
            ErrorClass::Config => 2,
            ErrorClass::Data => 3,
            ErrorClass::Numerical => 4,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}:{line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("invalid Likert scale ({min}, {max}): min must be below max")]
    InvalidScale { min: f64, max: f64 },

    #[error("rating {rating} for '{word}' is outside the scale ({min}, {max})")]
    RatingOutOfRange {
        word: String,
        rating: f64,
        min: f64,
        max: f64,
    },

    #[error("invalid word {0:?}: words must be non-empty and contain no whitespace")]
    InvalidWord(String),

    #[error("cannot combine datasets: {0}")]
    Incompatible(String),

    #[error("{0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("view mismatch: model expects {expected}, got {found}")]
    ViewMismatch { expected: ViewKind, found: ViewKind },

    #[error("view {view} has {rows} usable training rows (at least 2 required)")]
    InsufficientRows { view: ViewKind, rows: usize },

    #[error("view {0} is not available: no resource loaded for it")]
    ViewUnavailable(ViewKind),

    #[error("no feature view of the model is available for '{0}'")]
    AllViewsAbsent(String),

    #[error("normal equations are rank deficient; use a positive lambda")]
    RankDeficient,

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("no trained model for property {0}")]
    MissingModel(PropertyKind),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, line: u64, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Config(_) => ErrorClass::Config,
            Error::RankDeficient | Error::Numerical(_) => ErrorClass::Numerical,
            _ => ErrorClass::Data,
        }
    }
}
