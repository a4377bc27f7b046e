use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("elements belong to different towers")]
    TowerMismatch,

    #[error("extension is not finite over the requested prefix")]
    NotFiniteOverPrefix,

    #[error("matrix is not square")]
    NonSquare,

    #[error("tower step `{0}` has a reducible minimal polynomial")]
    ReducibleStep(String),

    #[error("tower step `{0}` must be monic and nonconstant")]
    MalformedStep(String),

    #[error("transcendental steps must precede algebraic steps")]
    StepOrder,

    #[error("factorization over this tower shape is not supported: {0}")]
    UnsupportedTower(String),
}
