use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed face: {0}")]
    MalformedFace(String),
    #[error("face {0:?} is not in the complex")]
    AbsentFace(Vec<u32>),
    #[error("bad edge order: {0}")]
    BadOrder(String),
    #[error("out of range: {0}")]
    Range(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("h-vector is not palindromic")]
    NotReciprocal,
    #[error("h(t) is not divisible by (1+t)")]
    Divisibility,
    #[error("link condition fails at edge {0:?}")]
    LinkCondition(Vec<u32>),
    #[error("gamma prefix must start with 1")]
    Normalization,
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("non-integral value where an integer is required: {0}")]
    NonIntegral(String),
}

pub type Result<T> = std::result::Result<T, Error>;
