use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed arguments: wrong arity, bad shuffle blocks, invalid splits.
    #[error("argument error: {0}")]
    Argument(String),
    /// An element does not live over the pair it was handed to.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("degree is undefined for the zero multivector")]
    ZeroDegree,
    #[error("unsupported pair: {0}")]
    UnsupportedPair(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A structure table that fails antisymmetry, Jacobi or anchor checks.
    #[error("invalid pair: {0}")]
    InvalidPair(String),
    #[error("pair document: {0}")]
    Document(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
