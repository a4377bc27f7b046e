//! Symmetric-power pushforwards, finite correspondences, and canonical
//! transfers for commutative group schemes over exact base fields.

pub mod corpus;
pub mod correspondence;
pub mod error;
pub mod pushforward;
pub mod ring_ops;
pub mod sym_power;
pub mod transfer;

pub use correspondence::{
    associativity_check, compose, points_equal, pullback_along_point, reconstruct_closure,
    AffineVariety, ComponentReport, Correspondence, CyclePoint, FunctionFieldModel, GenericCycle,
    ValidationReport,
};
pub use error::TransferError;
pub use pushforward::{
    algebra_base_change, algebra_from_extension, algebra_from_quotient, change_basis,
    coproduct_pushforward_check, extension_coords, pushforward, pushforward_ga, pushforward_gm,
    u_basis_independence_check, GroupPlugin,
};
pub use ring_ops::{CommRing, QuotientRing};
pub use sym_power::{
    orbit_basis, ring_det, split_p, split_p_identity_holds, sym_multiply, symmetrize_power,
    symmetrize_slot_sum, u_apply, u_map, FiniteFreeAlgebra, OrbitIndex, SymElem,
};
pub use transfer::{
    characterization_probe, dominant_injectivity_check, functoriality_check, pullback_along_graph,
    radicial_transfer, regularize_on, specialize_value, transfer, transfer_cycle,
    InjectivityOutcome, ProbeRow, RadicialDatum, TransferOptions, TransferResult,
};
