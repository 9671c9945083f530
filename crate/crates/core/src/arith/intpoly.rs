//! Dense polynomials with `BigInt` coefficients, lowest degree first.
//!
//! These are the workhorse behind the canonical rational functions: all
//! gcds are computed here with a primitive remainder sequence, which keeps
//! coefficient growth in check without ever leaving the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type IntPoly = Vec<BigInt>;

pub(crate) fn trim(p: &mut IntPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn one() -> IntPoly {
    vec![BigInt::one()]
}

pub(crate) fn is_one(p: &[BigInt]) -> bool {
    p.len() == 1 && p[0].is_one()
}

pub(crate) fn add(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), BigInt::zero());
    }
    for (o, s) in out.iter_mut().zip(b) {
        *o -= s;
    }
    trim(&mut out);
    out
}

pub(crate) fn neg(a: &[BigInt]) -> IntPoly {
    a.iter().map(|c| -c).collect()
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if is_one(a) {
        return b.to_vec();
    }
    if is_one(b) {
        return a.to_vec();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Non-negative gcd of all coefficients; zero for the zero polynomial.
pub(crate) fn content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

pub(crate) fn div_scalar_exact(a: &[BigInt], c: &BigInt) -> IntPoly {
    if c.is_one() {
        return a.to_vec();
    }
    a.iter().map(|x| x / c).collect()
}

/// Primitive part with a positive leading coefficient.
pub(crate) fn primitive(a: &[BigInt]) -> IntPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut c = content(a);
    if a.last().unwrap().is_negative() {
        c = -c;
    }
    div_scalar_exact(a, &c)
}

/// Pseudo-remainder of `a` by nonzero `b`: `lc(b)^k a mod b` for a suitable `k`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (k, bc) in b.iter().enumerate() {
            r[shift + k] -= &lr * bc;
        }
        trim(&mut r);
        // keep the running remainder small
        let c = content(&r);
        if !c.is_zero() && !c.is_one() {
            r = div_scalar_exact(&r, &c);
        }
    }
    r
}

/// Primitive gcd with positive leading coefficient. `gcd(0, 0)` is the zero
/// polynomial; callers decide whether that is an error.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() {
        return primitive(b);
    }
    if b.is_empty() {
        return primitive(a);
    }
    if a.len() == 1 || b.len() == 1 {
        return one();
    }
    let (mut u, mut v) = if a.len() >= b.len() {
        (primitive(a), primitive(b))
    } else {
        (primitive(b), primitive(a))
    };
    while !v.is_empty() {
        if v.len() == 1 {
            return one();
        }
        let r = pseudo_rem(&u, &v);
        u = v;
        v = primitive(&r);
    }
    primitive(&u)
}

/// Exact quotient `a / b`, or `None` when `b` does not divide `a` over the
/// integers.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<IntPoly> {
    if b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if is_one(b) {
        return Some(a.to_vec());
    }
    if a.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let top = &r[k + db];
        if top.is_zero() {
            continue;
        }
        let (qk, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bc) in b.iter().enumerate() {
            r[k + j] -= &qk * bc;
        }
        q[k] = qk;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut q);
    Some(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        let mut v: IntPoly = c.iter().map(|&x| BigInt::from(x)).collect();
        trim(&mut v);
        v
    }

    #[test]
    fn gcd_of_difference_of_squares() {
        assert_eq!(gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(gcd(&p(&[2, 2]), &p(&[4, 4])), p(&[1, 1]));
        assert_eq!(gcd(&p(&[1, 2, 1]), &p(&[3])), p(&[1]));
        assert_eq!(gcd(&p(&[0, 0, -3]), &p(&[])), p(&[0, 0, 1]));
    }

    #[test]
    fn exact_division() {
        assert_eq!(div_exact(&p(&[-1, 0, 1]), &p(&[1, 1])), Some(p(&[-1, 1])));
        assert_eq!(div_exact(&p(&[1, 0, 1]), &p(&[1, 1])), None);
        assert_eq!(div_exact(&p(&[2, 2]), &p(&[2])), Some(p(&[1, 1])));
        assert_eq!(div_exact(&p(&[1, 1]), &p(&[2])), None);
    }

    #[test]
    fn gcd_with_nontrivial_common_factor() {
        // (s^2 + 1)(s - 2) and (s^2 + 1)(3s + 5)
        let a = mul(&p(&[1, 0, 1]), &p(&[-2, 1]));
        let b = mul(&p(&[1, 0, 1]), &p(&[5, 3]));
        assert_eq!(gcd(&a, &b), p(&[1, 0, 1]));
    }
}
