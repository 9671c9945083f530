//! Column-partitioning recursion carried out directly over rational
//! functions.
//!
//! `X_1` is the weighted pseudoinverse of the first column. Each later stage
//! appends column `a_i` and updates `X_{i-1}` to `X_i` using the vectors
//! `d_i = X_{i-1} a_i` and `c_i = a_i - Â_{i-1} d_i`. The inverse of the
//! leading block `N_i` of the column weight is maintained alongside by the
//! block-inverse recursion in [`pd_inverse`].

mod greville;
mod pd;
mod problem;

pub use greville::{
    assemble_next, column_pinv_init, compute_b, compute_d_c, compute_delta, wmp_inverse,
    wmp_inverse_traced, Branch, PartitionState, StageTrace,
};
pub use pd::{pd_block_step, pd_inverse};
pub use problem::WeightedProblem;
