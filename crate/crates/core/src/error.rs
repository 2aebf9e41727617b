use thiserror::Error;

/// Errors produced by parsing, stepping and ranking.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed token `{0}`")]
    Malformed(String),

    #[error("multiplicity must be a positive integer in `{0}`")]
    BadMultiplicity(String),

    #[error("part `{0}` is not a power of two")]
    NotPowerOfTwo(String),

    #[error("parts of size 1 are not allowed; only even parts are stored")]
    UnitPart,

    #[error("the empty partition is the first term and has no predecessor")]
    StartOfSequence,

    #[error("invalid trail: {0}")]
    InvalidTrail(String),

    #[error("index must be at least 1")]
    ZeroIndex,

    #[error("{0} is too large to process")]
    TooLarge(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for malformed input text, as opposed to well-formed input
    /// that names something outside the domain.
    pub fn is_syntax(&self) -> bool {
        matches!(self, Error::Malformed(_) | Error::BadMultiplicity(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
