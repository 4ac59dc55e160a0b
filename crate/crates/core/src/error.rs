use thiserror::Error;

/// Errors raised by the engine.
///
/// Size refusals and genuine internal inconsistencies are kept apart so
/// callers (the CLI in particular) can map them to different exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("size cap exceeded: {what} = {size} > {cap}")]
    SizeCap { what: String, size: u128, cap: u128 },
    #[error("field mismatch: {0}")]
    SpecMismatch(String),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("invalid base power {0}")]
    InvalidBasePower(u64),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("conductor {0} exceeds 10^6")]
    ConductorOverflow(u64),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("internal assertion failed: {0}")]
    Assertion(String),
    #[error("unknown catalog id {0}")]
    UnknownId(String),
    #[error("catalog data: {0}")]
    Data(String),
}

impl Error {
    pub fn cap(what: impl Into<String>, size: u128, cap: u128) -> Self {
        Error::SizeCap { what: what.into(), size, cap }
    }

    /// True for refusals caused by computation size rather than a bug.
    pub fn is_size_refusal(&self) -> bool {
        matches!(self, Error::SizeCap { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
