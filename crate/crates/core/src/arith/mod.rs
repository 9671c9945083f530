//! Exact scalar arithmetic: big rationals, univariate polynomials over them,
//! and canonical rational functions.

mod intpoly;
mod poly;
mod ratfun;

pub(crate) use intpoly::IntPoly;
pub use num_rational::BigRational;
pub use poly::{poly_normalize, UniPoly};
pub use ratfun::RatFun;

pub(crate) mod int {
    pub(crate) use super::intpoly::*;
}
