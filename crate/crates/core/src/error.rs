use thiserror::Error;

/// Errors raised by the library.
///
/// The variants fall into three families that callers (the CLI in
/// particular) treat differently: bad input, exhausted resource budgets,
/// and `Defect`, which signals that a proven identity failed to hold and
/// therefore points at a bug rather than at the input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root system {label}{rank}: {reason}")]
    InvalidType {
        label: String,
        rank: usize,
        reason: String,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("{0}")]
    InvalidInput(String),

    #[error("operation not supported for type {0}")]
    UnsupportedType(String),

    #[error("budget exceeded: {what} needs {needed}, budget is {budget}")]
    Budget {
        what: &'static str,
        needed: u128,
        budget: u128,
    },

    #[error("internal defect: {0}")]
    Defect(String),
}

impl Error {
    pub(crate) fn defect(msg: impl Into<String>) -> Self {
        Error::Defect(msg.into())
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn is_defect(&self) -> bool {
        matches!(self, Error::Defect(_))
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
