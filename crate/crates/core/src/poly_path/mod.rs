//! The column recursion carried out on coefficient sequences.
//!
//! Inputs are polynomial matrices held as lists of constant coefficient
//! matrices ([`PolyMatrix`]). Stage `i` keeps `X_i = Z_i / Y_i` with a matrix
//! polynomial numerator and a scalar polynomial denominator, and `N_i^{-1}`
//! likewise as `N̄_i / N̿_i`. Every product is a coefficient convolution and
//! every stage result is reduced by [`fraction_simplify`].
//!
//! Each sequence is also checked against an a-priori degree bound computed
//! from the degrees of `A`, `M`, `N` and the bounds of the previous stage;
//! see [`CapacityCheck`].

mod capacity;
mod fraction;
mod greville;
mod pd;
mod polymatrix;

pub use capacity::CapacityCheck;
pub use fraction::{fraction_simplify, MatrixPolyFraction};
pub use greville::{
    poly_init_zy, poly_step_c, poly_step_d, poly_step_delta, poly_step_phi_psi, poly_step_theta, poly_step_vw,
    poly_step_zy, poly_wmp_inverse, poly_wmp_inverse_traced, PolyPartitionState, PolyProblem, PolyStageTrace,
    StageBounds,
};
pub use pd::{poly_pd_inverse, poly_pd_inverse_traced, PdBounds, PdPolyState, PdStepValues};
pub use polymatrix::{PolyMatrix, PolyPartition};
