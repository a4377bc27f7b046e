//! Exact arithmetic substrate: prime fields, extension towers, univariate
//! polynomials, linear algebra, and complete univariate factorization.

pub mod elems;
pub mod error;
pub mod ext;
pub mod factor;
pub mod frobenius;
pub mod linalg;
pub mod scalar;
pub mod tower;
pub mod upoly;

pub use error::AlgebraError;
pub use ext::{basis_over, coords_over, elem_from_coords, minimal_polynomial, mult_matrix, trace_and_norm};
pub use factor::{factor, is_irreducible, Factorization};
pub use frobenius::{pth_root, unique_root_of_power};
pub use linalg::Matrix;
pub use scalar::{PrimeField, Scalar};
pub use tower::{
    elem_from_alg_coords, elem_from_frac_parts, tower_arith, ArithOp, FieldTower,
    IrreducibilityPolicy, IrreducibilityStatus, TowerElem,
};
pub use upoly::UniPoly;
