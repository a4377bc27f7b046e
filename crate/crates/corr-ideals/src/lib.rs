//! Multivariate ideal computations: Groebner bases, zero-dimensionality,
//! standard-monomial bases, lengths of artinian quotients, primary
//! decomposition of zero-dimensional ideals, and fiber extraction.

pub mod decompose;
pub mod error;
pub mod fiber;
pub mod groebner;
pub mod order;
pub mod quotient;
pub mod ring;

pub use decompose::{decompose_zero_dim, DecomposedPoint};
pub use error::IdealError;
pub use fiber::{fiber_ideal, finite_over_first_block};
pub use groebner::{buchberger, ideal_contains, is_zero_dimensional, normal_form};
pub use order::TermOrder;
pub use quotient::{quotient_basis, ArtinianQuotient};
pub use ring::{Monomial, MultiPoly, PolyRing};
