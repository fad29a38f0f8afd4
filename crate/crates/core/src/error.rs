use thiserror::Error;

/// Errors raised by the analyses in this crate.
///
/// Every variant except [`Error::Internal`] describes bad input; `Internal`
/// means a cross-check between two independent computations disagreed.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("position outside the defined side of the word: {0}")]
    Domain(String),

    #[error("inconsistent data: {0}")]
    Data(String),

    #[error("orbit point {step} lands on a partition endpoint")]
    Resonance { step: usize },

    #[error("degenerate partition: {0}")]
    DegeneratePartition(String),

    #[error("growth class precondition failed: {0}")]
    Class(String),

    #[error("not a uniformly recurrent minimal-growth witness: {0}")]
    NotCase2(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn data(msg: impl Into<String>) -> Self {
        Error::Data(msg.into())
    }

    /// True for failures that point at a bug rather than at the input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
