//! Dense matrices over the rationals and over rational functions.

mod ff;
mod qmatrix;
mod rf;

pub use ff::{ff_inverse, generic_rank};
pub use qmatrix::QMatrix;
pub use rf::{PrincipalPartition, RfMatrix};
