//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by library operations and the CLI harness.
#[derive(Debug, Error)]
pub enum Error {
    /// A numeric argument was NaN or infinite.
    #[error("non-finite input for {0}")]
    NonFinite(&'static str),

    /// The two class means coincide, so no discriminating model exists.
    #[error("degenerate classes: mu1 == mu2")]
    DegenerateClasses,

    /// A model, scheme, or config parameter is outside its admissible range.
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: String,
    },

    /// An operation that needs data received an empty sequence.
    #[error("empty input for {0}")]
    EmptyInput(&'static str),

    /// Not enough samples to perform the operation.
    #[error("too few samples: need at least {needed}, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    /// Paired sequences disagree in length.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// A classifier requiring exactly two classes saw a different count.
    #[error("expected exactly two classes, found {0}")]
    NotTwoClasses(usize),

    /// Dataset CSV parse failure, with the 1-based offending line.
    #[error("csv parse error at line {line}: {msg}")]
    Csv { line: usize, msg: String },

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// Bad command-line usage or malformed harness input.
    #[error("{0}")]
    Usage(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
