//! Exact weighted Moore-Penrose inverses of one-variable rational and
//! polynomial matrices.
//!
//! Two independent routes compute `X = A†_{MN}`:
//!
//! * [`rational_path`] runs the column-partitioning recursion directly on
//!   matrices of rational functions ([`RfMatrix`]).
//! * [`poly_path`] runs the same recursion on coefficient sequences of
//!   polynomial matrices, carrying each stage as a matrix polynomial over a
//!   single scalar polynomial denominator ([`MatrixPolyFraction`]).
//!
//! [`verify`] checks results against the four weighted Penrose equations
//! exactly, compares the two paths, and spot-checks pointwise evaluations.

pub mod arith;
pub mod error;
pub mod matrix;
pub mod poly_path;
pub mod rational_path;
pub mod verify;

pub use arith::{BigRational, RatFun, UniPoly};
pub use error::{Error, Result};
pub use matrix::{PrincipalPartition, QMatrix, RfMatrix};
pub use poly_path::{poly_pd_inverse, poly_wmp_inverse, MatrixPolyFraction, PolyMatrix};
pub use rational_path::{pd_inverse, wmp_inverse, WeightedProblem};
pub use verify::{cross_path_check, eval_consistency_check, penrose_check, PenroseReport};
