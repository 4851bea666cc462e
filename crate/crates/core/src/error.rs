use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    ZeroDivision,

    #[error("usage error: {0}")]
    Usage(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("elements from different field towers")]
    TowerMismatch,

    #[error("element {0:?} is not in the subfield F_q")]
    NotInSubfield(Vec<u32>),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is singular (rank {rank} < {size})")]
    Singular { rank: usize, size: usize },

    #[error("evaluation points are not distinct (positions {0} and {1})")]
    RepeatedPoint(usize, usize),

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("certification failed: {0}")]
    CertificationFailed(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("{path}: {message}")]
    Schema { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn infeasible(msg: impl Into<String>) -> Self {
        Error::Infeasible(msg.into())
    }
}
