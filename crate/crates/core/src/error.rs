use thiserror::Error;

/// Errors produced by the exact kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("binomial C({a},{b}) exceeds table bound {bound}")]
    Capacity { a: u64, b: u64, bound: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("value {0} does not fit in 64 bits")]
    Overflow(String),

    #[error("polynomial is not homogeneous of degree {expected}")]
    MixedDegrees { expected: u32 },

    #[error("expected {expected} variables, found {found}")]
    VariableCount { expected: usize, found: usize },

    #[error("hyperplane pivot coefficient is zero")]
    ZeroPivot,

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
