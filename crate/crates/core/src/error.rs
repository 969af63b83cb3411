use thiserror::Error;

/// Errors produced by the geometry, construction and verification routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("points {0} and {1} coincide")]
    DuplicatePoints(usize, usize),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("enumeration budget exceeded: {0}")]
    Budget(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    /// Short machine-readable tag used in error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Input(_) => "input",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::TooFewPoints { .. } => "too_few_points",
            Error::DuplicatePoints(..) => "duplicate_points",
            Error::Unsupported(_) => "unsupported",
            Error::Budget(_) => "budget",
            Error::Parse { .. } => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
