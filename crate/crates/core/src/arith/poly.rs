use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::intpoly::{self, IntPoly};
use crate::error::{Error, Result};

/// Univariate polynomial in `s` with exact rational coefficients.
///
/// `coeffs()[j]` is the coefficient of `s^j`. The zero polynomial has no
/// coefficients, and the last stored coefficient is never zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

/// Drops trailing zero coefficients.
pub fn poly_normalize(mut coeffs: Vec<BigRational>) -> UniPoly {
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    UniPoly { coeffs }
}

impl UniPoly {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        poly_normalize(coeffs)
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        poly_normalize(vec![c])
    }

    /// The indeterminate `s`.
    pub fn s() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    /// `c * s^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.push(c);
        poly_normalize(coeffs)
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        poly_normalize(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    /// Number of stored coefficients (`degree + 1`, or 0 for zero).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, j: usize) -> BigRational {
        self.coeffs.get(j).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Horner evaluation at `s0`.
    pub fn eval(&self, s0: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * s0 + c;
        }
        acc
    }

    /// Euclidean division over the rationals.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let lead = divisor.leading_coeff().ok_or(Error::DivisionByZero)?;
        let db = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + db] / lead;
            if q.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * b;
            }
            quot[k] = q;
        }
        rem.truncate(db);
        Ok((poly_normalize(quot), poly_normalize(rem)))
    }

    /// Greatest common divisor, scaled to primitive integer coefficients with
    /// a positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::UndefinedGcd);
        }
        let (a, _) = self.to_primitive_ints();
        let (b, _) = other.to_primitive_ints();
        Ok(Self::from_ints(&intpoly::gcd(&a, &b)))
    }

    /// Splits `self = scale * p` with `p` a primitive integer polynomial whose
    /// leading coefficient is positive. The zero polynomial maps to `([], 0)`.
    pub(crate) fn to_primitive_ints(&self) -> (IntPoly, BigRational) {
        if self.is_zero() {
            return (Vec::new(), BigRational::zero());
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: IntPoly = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let prim = intpoly::primitive(&ints);
        let mut content = intpoly::content(&ints);
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        (prim, BigRational::new(content, lcm))
    }

    pub(crate) fn from_ints(p: &[BigInt]) -> Self {
        poly_normalize(
            p.iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub(crate) fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub(crate) fn to_ints(&self) -> Option<IntPoly> {
        self.is_integral()
            .then(|| self.coeffs.iter().map(|c| c.to_integer()).collect())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let (long, short) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.coeffs.clone();
        for (o, s) in out.iter_mut().zip(&short.coeffs) {
            *o += s;
        }
        poly_normalize(out)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.coeffs.clone();
        if out.len() < rhs.len() {
            out.resize(rhs.len(), BigRational::zero());
        }
        for (o, s) in out.iter_mut().zip(&rhs.coeffs) {
            *o -= s;
        }
        poly_normalize(out)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.len() + rhs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        poly_normalize(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

/// Writes coefficients in ascending powers of `s`, e.g. `12+32*s+33*s^2`.
/// The output is accepted by the matrix-file expression grammar.
impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let a = c.abs();
            let unit = a.is_one();
            match (k, unit) {
                (0, _) => write_rational(f, &a)?,
                (_, true) => {}
                (_, false) => {
                    write_rational(f, &a)?;
                    write!(f, "*")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "s")?,
                _ => write!(f, "s^{k}")?,
            }
        }
        Ok(())
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, a: &BigRational) -> fmt::Result {
    if a.is_integer() {
        write!(f, "{}", a.numer())
    } else {
        write!(f, "{}/{}", a.numer(), a.denom())
    }
}
