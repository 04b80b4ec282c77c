use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("torsion condition violated: {0}")]
    Torsion(String),

    #[error("zero-sum condition violated: {0}")]
    NonZeroSum(String),

    #[error("point is not on the identity sheet of ker(theta)")]
    OffSheet,

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("enumeration guard exceeded: {needed} > {limit}")]
    GuardExceeded { needed: u128, limit: u128 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
