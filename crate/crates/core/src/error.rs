use thiserror::Error;

/// Errors reported by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} needs {needed} but the cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: String,
        cap: u64,
    },

    #[error("hypotheses unmet: {0}")]
    HypothesesUnmet(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("at least two codewords are required, got {0}")]
    TooFewCodewords(usize),

    #[error("duplicate codeword {0}")]
    DuplicateCodeword(String),

    #[error("generator matrix is singular")]
    SingularMatrix,

    #[error("unsupported magnitude s = {0}")]
    InvalidS(u32),

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
