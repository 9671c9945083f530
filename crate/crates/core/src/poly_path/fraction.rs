use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::PolyMatrix;
use crate::arith::{int, BigRational, IntPoly, RatFun, UniPoly};
use crate::error::{Error, Result};
use crate::matrix::RfMatrix;

/// A matrix of rational functions written as one polynomial matrix over a
/// single scalar polynomial denominator.
///
/// Values built through [`MatrixPolyFraction::new`] are canonical: the
/// denominator shares no factor with every numerator entry, and all
/// coefficients together are primitive integers with the denominator's
/// leading coefficient positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixPolyFraction {
    num: PolyMatrix,
    den: UniPoly,
}

impl MatrixPolyFraction {
    pub fn new(num: PolyMatrix, den: UniPoly) -> Result<Self> {
        let (num, den) = fraction_simplify(&num, &den)?;
        Ok(Self { num, den })
    }

    pub fn num(&self) -> &PolyMatrix {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn shape(&self) -> (usize, usize) {
        self.num.shape()
    }

    /// Entrywise canonical rational functions.
    pub fn to_rf_matrix(&self) -> Result<RfMatrix> {
        let data = self
            .num
            .entries()
            .into_iter()
            .map(|p| RatFun::new(p, self.den.clone()))
            .collect::<Result<Vec<_>>>()?;
        RfMatrix::new(self.num.rows(), self.num.cols(), data)
    }
}

fn lift(p: &UniPoly, lcm: &BigInt) -> IntPoly {
    let k = BigRational::from_integer(lcm.clone());
    p.coeffs().iter().map(|c| (c * &k).to_integer()).collect()
}

/// Cancels the common polynomial factor of `y` and all entries of `z`, then
/// scales everything to primitive integers with `lc(y) > 0`. The value
/// `z / y` is unchanged.
pub fn fraction_simplify(z: &PolyMatrix, y: &UniPoly) -> Result<(PolyMatrix, UniPoly)> {
    if y.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let entries = z.entries();
    let lcm = entries
        .iter()
        .chain(std::iter::once(y))
        .flat_map(|p| p.coeffs())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut y_int = lift(y, &lcm);
    let mut ints: Vec<IntPoly> = entries.iter().map(|p| lift(p, &lcm)).collect();

    let mut g = int::primitive(&y_int);
    for e in &ints {
        if g.len() == 1 {
            break;
        }
        g = int::gcd(&g, e);
    }
    if g.len() > 1 {
        y_int = int::div_exact(&y_int, &g).ok_or(Error::Internal("gcd does not divide"))?;
        for e in &mut ints {
            *e = int::div_exact(e, &g).ok_or(Error::Internal("gcd does not divide"))?;
        }
    }

    let mut content = int::content(&y_int);
    for e in &ints {
        if content.is_one() {
            break;
        }
        content = content.gcd(&int::content(e));
    }
    if y_int.last().is_some_and(Signed::is_negative) {
        content = -content;
    }
    if !content.is_one() && !content.is_zero() {
        y_int = int::div_scalar_exact(&y_int, &content);
        for e in &mut ints {
            *e = int::div_scalar_exact(e, &content);
        }
    }
    let polys: Vec<UniPoly> = ints.iter().map(|e| UniPoly::from_ints(e)).collect();
    let num = PolyMatrix::from_entries(z.rows(), z.cols(), &polys)?;
    Ok((num, UniPoly::from_ints(&y_int)))
}
