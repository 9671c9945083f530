use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::intpoly::{self, IntPoly};
use super::poly::UniPoly;
use crate::error::{Error, Result};

/// An element of the rational-function field Q(s), kept in canonical form.
///
/// Canonical form: numerator and denominator are coprime polynomials with
/// integer coefficients, the pair is jointly primitive (no common integer
/// content), and the denominator has a positive leading coefficient. Zero is
/// `0/1`. Two `RatFun`s are equal as functions iff they are equal as values
/// of this type.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: IntPoly,
    den: IntPoly,
}

impl RatFun {
    /// Builds the canonical reduced fraction `num / den`.
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        // Clear rational coefficients with a common multiplier.
        let lcm = num
            .coeffs()
            .iter()
            .chain(den.coeffs())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let lift = |p: &UniPoly| -> IntPoly {
            p.coeffs()
                .iter()
                .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
                .collect()
        };
        Ok(Self::reduce(lift(&num), lift(&den)))
    }

    /// Reduces an integer pair with nonzero denominator to canonical form.
    fn reduce(num: IntPoly, den: IntPoly) -> Self {
        if num.is_empty() {
            return Self::zero();
        }
        let g = intpoly::gcd(&num, &den);
        let (num, den) = if intpoly::is_one(&g) {
            (num, den)
        } else {
            (
                intpoly::div_exact(&num, &g).expect("gcd divides numerator"),
                intpoly::div_exact(&den, &g).expect("gcd divides denominator"),
            )
        };
        Self::normalize_content(num, den)
    }

    /// Canonical sign and joint content for an already coprime pair.
    fn normalize_content(num: IntPoly, den: IntPoly) -> Self {
        let mut c = intpoly::content(&num).gcd(&intpoly::content(&den));
        if den.last().unwrap().is_negative() {
            c = -c;
        }
        if c.is_one() {
            return Self { num, den };
        }
        Self {
            num: intpoly::div_scalar_exact(&num, &c),
            den: intpoly::div_scalar_exact(&den, &c),
        }
    }

    pub fn zero() -> Self {
        Self {
            num: Vec::new(),
            den: intpoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The indeterminate `s`.
    pub fn s() -> Self {
        Self {
            num: vec![BigInt::zero(), BigInt::one()],
            den: intpoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn from_poly(p: UniPoly) -> Self {
        Self::new(p, UniPoly::one()).expect("nonzero denominator")
    }

    pub fn numer(&self) -> UniPoly {
        UniPoly::from_ints(&self.num)
    }

    pub fn denom(&self) -> UniPoly {
        UniPoly::from_ints(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        intpoly::is_one(&self.num) && intpoly::is_one(&self.den)
    }

    /// True when the denominator is the constant 1.
    pub fn is_polynomial(&self) -> bool {
        intpoly::is_one(&self.den)
    }

    /// True when both numerator and denominator are constants.
    pub fn is_constant(&self) -> bool {
        self.num.len() <= 1 && self.den.len() == 1
    }

    /// The polynomial value when `is_polynomial()` holds.
    pub fn as_polynomial(&self) -> Option<UniPoly> {
        self.is_polynomial().then(|| self.numer())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_content(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Exact value at `s0`; fails with a pole error when the denominator
    /// vanishes there.
    pub fn eval(&self, s0: &BigRational) -> Result<BigRational> {
        let horner = |p: &IntPoly| {
            p.iter().rev().fold(BigRational::zero(), |acc, c| {
                acc * s0 + BigRational::from_integer(c.clone())
            })
        };
        let d = horner(&self.den);
        if d.is_zero() {
            return Err(Error::Pole {
                position: None,
                point: s0.to_string(),
            });
        }
        Ok(horner(&self.num) / d)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl Default for RatFun {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = intpoly::add(&self.num, &rhs.num);
            if num.is_empty() {
                return RatFun::zero();
            }
            return RatFun::reduce(num, self.den.clone());
        }
        // a/b + c/d with g = gcd(b, d): only g can share factors with the sum.
        let g = intpoly::gcd(&self.den, &rhs.den);
        let b1 = intpoly::div_exact(&self.den, &g).expect("gcd divides");
        let d1 = intpoly::div_exact(&rhs.den, &g).expect("gcd divides");
        let num = intpoly::add(&intpoly::mul(&self.num, &d1), &intpoly::mul(&rhs.num, &b1));
        if num.is_empty() {
            return RatFun::zero();
        }
        let den = intpoly::mul(&self.den, &d1);
        if intpoly::is_one(&g) {
            return RatFun::normalize_content(num, den);
        }
        let h = intpoly::gcd(&num, &g);
        if intpoly::is_one(&h) {
            return RatFun::normalize_content(num, den);
        }
        RatFun::normalize_content(
            intpoly::div_exact(&num, &h).expect("gcd divides"),
            intpoly::div_exact(&den, &h).expect("gcd divides"),
        )
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: intpoly::neg(&self.num),
            den: self.den.clone(),
        }
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        // (a/b)(c/d): cancel gcd(a, d) and gcd(c, b); the rest is coprime.
        let cross = |n: &IntPoly, d: &IntPoly| -> (IntPoly, IntPoly) {
            let g = intpoly::gcd(n, d);
            if intpoly::is_one(&g) {
                (n.clone(), d.clone())
            } else {
                (
                    intpoly::div_exact(n, &g).expect("gcd divides"),
                    intpoly::div_exact(d, &g).expect("gcd divides"),
                )
            }
        };
        let (a, d) = cross(&self.num, &rhs.den);
        let (c, b) = cross(&rhs.num, &self.den);
        RatFun::normalize_content(intpoly::mul(&a, &c), intpoly::mul(&b, &d))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: RatFun) -> RatFun {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl From<UniPoly> for RatFun {
    fn from(p: UniPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<i64> for RatFun {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

/// Canonical text form, e.g. `(1+s)/(2+3*s+2*s^2)` or `-s^3`.
///
/// Parentheses are added only where the expression grammar needs them, so
/// the text parses back to the identical value.
impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.numer();
        if self.is_polynomial() {
            return write!(f, "{num}");
        }
        let den = self.denom();
        // A numerator that is a single term binds correctly without parens.
        let num_terms = num.coeffs().iter().filter(|c| !c.is_zero()).count();
        if num_terms == 1 {
            write!(f, "{num}")?;
        } else {
            write!(f, "({num})")?;
        }
        // The denominator must be an atom: an integer, `s`, or `s^k`.
        let den_terms = den.coeffs().iter().filter(|c| !c.is_zero()).count();
        let lead_one = den.leading_coeff().is_some_and(One::is_one);
        if den_terms == 1 && (den.len() == 1 || lead_one) {
            write!(f, "/{den}")
        } else {
            write!(f, "/({den})")
        }
    }
}
