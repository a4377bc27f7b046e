use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,

    #[error("no separating linear form found within the retry bound")]
    SeparatingFormNotFound,

    #[error("polynomial rings do not match")]
    RingMismatch,

    #[error(transparent)]
    Algebra(#[from] corr_algebra::AlgebraError),
}
