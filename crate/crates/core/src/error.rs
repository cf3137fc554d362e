use thiserror::Error;

/// Errors raised by the engine. Every failure is a value; nothing panics on
/// user-supplied data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("invalid partition data: {0}")]
    InvalidPartition(String),

    #[error("right-hand factor is not reduced (has a constant term)")]
    NotReduced,

    #[error("series composition requires a vanishing constant term in the inner series")]
    NonzeroConstant,

    #[error("bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("inconsistent block data: {0}")]
    InconsistentBlocks(String),

    #[error("functor is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("label constraint violated: {0}")]
    LabelConstraint(String),

    #[error("diagram is not functorial: {0}")]
    NotFunctorial(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("computation paths disagree: {0}")]
    PathMismatch(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
