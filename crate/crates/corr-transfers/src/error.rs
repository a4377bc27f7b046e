use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TransferError {
    #[error("malformed algebra: {0} check failed")]
    MalformedAlgebra(String),

    #[error("element is not a unit")]
    NotAUnit,

    #[error("function is not invertible at a cycle point")]
    NotInvertibleAtPoint,

    #[error("component {0} is invalid: {1}")]
    InvalidComponent(usize, String),

    #[error("component has a non-integral generic fiber")]
    NonIntegralComponent,

    #[error("value cannot be certified regular on the target variety")]
    NotRegularizable,

    #[error("element does not descend to the base of the radicial datum")]
    NotInSubfield,

    #[error("datum is not radicial: {0}")]
    NotRadicial(String),

    #[error("variety has no function-field model: {0}")]
    NoModel(String),

    #[error("plugin arity mismatch: expected {expected}, got {got}")]
    PluginArity { expected: usize, got: usize },

    #[error("length conservation failed in a pullback")]
    LengthConservation,

    #[error("closure reconstruction is only supported for bases of dimension <= 1: {0}")]
    ClosureUnsupported(String),

    #[error(transparent)]
    Algebra(#[from] corr_algebra::AlgebraError),

    #[error(transparent)]
    Ideal(#[from] corr_ideals::IdealError),
}
