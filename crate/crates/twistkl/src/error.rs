//! Crate-wide error type.
//!
//! Errors are split into three classes so callers (the CLI in
//! particular) can distinguish "the input was bad", "a verified
//! mathematical property failed on this input", and "an internal
//! invariant of the implementation broke".

use thiserror::Error;

/// Coarse classification used to map errors to process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed input: bad matrix, bad star map, missing length bound.
    Usage,
    /// A property the library verifies failed to hold for the given input.
    PropertyFailure,
    /// An internal consistency assertion failed; indicates a bug.
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid star map: {0}")]
    InvalidStar(String),

    #[error("unsupported Coxeter matrix: {0}")]
    UnsupportedMatrix(String),

    #[error("infinite group requires a length bound")]
    NeedsLengthBound,

    #[error("operation requires a finite group")]
    FiniteGroupRequired,

    #[error("unknown group type `{0}`")]
    UnknownGroupType(String),

    #[error("invalid run configuration: {0}")]
    InvalidConfig(String),

    #[error("element is not a twisted involution (id {0})")]
    NotTwistedInvolution(u32),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("polynomial division of {num} by {den} is not exact")]
    NotDivisible { num: String, den: String },

    #[error("self-dual completion: correction at id {y} in column {w} is not antisymmetric: {value}")]
    AntisymmetryViolated { w: u32, y: u32, value: String },

    #[error("positivity violated: {0}")]
    PositivityViolated(String),

    #[error("module relation violated: {0}")]
    RelationViolated(String),

    #[error("cell filtration violated: {0}")]
    FiltrationViolated(String),

    #[error("parity splitting violated: {0}")]
    SplitViolated(String),

    #[error("mismatch against expected value: {0}")]
    MismatchDetected(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Class of the error, used for CLI exit codes.
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            InvalidMatrix(_) | InvalidStar(_) | UnsupportedMatrix(_) | NeedsLengthBound
            | FiniteGroupRequired | UnknownGroupType(_) | InvalidConfig(_) | Io(_) | Json(_) => {
                ErrorClass::Usage
            }
            PositivityViolated(_) | RelationViolated(_) | SplitViolated(_)
            | MismatchDetected(_) => ErrorClass::PropertyFailure,
            NotTwistedInvolution(_) | PreconditionViolated(_) | NotDivisible { .. }
            | AntisymmetryViolated { .. } | FiltrationViolated(_) | InternalInvariant(_) => {
                ErrorClass::Internal
            }
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
