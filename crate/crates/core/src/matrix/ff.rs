//! Fraction-free elimination over Z[s].
//!
//! Rows of a rational-function matrix are first cleared of denominators, so
//! `A = D^{-1} P` with `D` diagonal and `P` an integer polynomial matrix.
//! All elimination then happens on `P` with exact polynomial divisions
//! (Bareiss), which makes this an independent check on the block recursion
//! used by the inversion algorithms.

use super::RfMatrix;
use crate::arith::{int, IntPoly, RatFun};
use crate::error::{Error, Result};

fn lcm(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let g = int::gcd(a, b);
    int::mul(&int::div_exact(a, &g).expect("gcd divides"), b)
}

/// Returns `(P, d)` with row `i` of `a` equal to `P_i / d_i`.
fn clear_rows(a: &RfMatrix) -> (Vec<Vec<IntPoly>>, Vec<IntPoly>) {
    let mut rows = Vec::with_capacity(a.rows());
    let mut dens = Vec::with_capacity(a.rows());
    for r in 0..a.rows() {
        let mut d = int::one();
        for c in 0..a.cols() {
            d = lcm(&d, &int_den(a.get(r, c)));
        }
        let row = (0..a.cols())
            .map(|c| {
                let x = a.get(r, c);
                let factor = int::div_exact(&d, &int_den(x)).expect("lcm is a multiple");
                int::mul(&int_num(x), &factor)
            })
            .collect();
        rows.push(row);
        dens.push(d);
    }
    (rows, dens)
}

fn int_num(x: &RatFun) -> IntPoly {
    x.numer().to_ints().expect("canonical numerators are integral")
}

fn int_den(x: &RatFun) -> IntPoly {
    x.denom().to_ints().expect("canonical denominators are integral")
}

/// Exact inverse by fraction-free Gauss-Jordan elimination.
///
/// The pivot at each step is the first nonzero entry at or below the
/// diagonal in the current column.
pub fn ff_inverse(a: &RfMatrix) -> Result<RfMatrix> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            what: "inverted matrix",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let (p, dens) = clear_rows(a);
    // augmented [P | I]
    let mut m: Vec<Vec<IntPoly>> = p
        .into_iter()
        .enumerate()
        .map(|(r, mut row)| {
            row.extend((0..n).map(|c| if c == r { int::one() } else { Vec::new() }));
            row
        })
        .collect();
    let mut prev = int::one();
    for k in 0..n {
        let pivot_row = (k..n).find(|&r| !m[r][k].is_empty()).ok_or(Error::Singular { stage: None })?;
        m.swap(k, pivot_row);
        let pivot = m[k][k].clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let factor = m[i][k].clone();
            for j in 0..2 * n {
                if j == k {
                    continue;
                }
                let t = int::sub(&int::mul(&pivot, &m[i][j]), &int::mul(&factor, &m[k][j]));
                m[i][j] = int::div_exact(&t, &prev).ok_or(Error::Internal("inexact Bareiss step"))?;
            }
            m[i][k] = Vec::new();
        }
        prev = pivot;
    }
    // Now m = [det I | det P^{-1}] and A^{-1} = P^{-1} D.
    let det = crate::arith::UniPoly::from_ints(&prev);
    let mut out = Vec::with_capacity(n * n);
    for (r, row) in m.iter().enumerate() {
        debug_assert_eq!(row[r], prev);
        for (c, d) in dens.iter().enumerate() {
            let num = crate::arith::UniPoly::from_ints(&int::mul(&row[n + c], d));
            out.push(RatFun::new(num, det.clone())?);
        }
    }
    RfMatrix::new(n, n, out)
}

/// Rank over the rational-function field.
pub fn generic_rank(a: &RfMatrix) -> usize {
    let (mut m, _) = clear_rows(a);
    let (rows, cols) = a.shape();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_empty()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for i in rank + 1..rows {
            if m[i][col].is_empty() {
                continue;
            }
            let factor = m[i][col].clone();
            let mut g: IntPoly = Vec::new();
            for j in col..cols {
                m[i][j] = int::sub(&int::mul(&pivot, &m[i][j]), &int::mul(&factor, &m[rank][j]));
                g = int::gcd(&g, &m[i][j]);
            }
            if !g.is_empty() && !int::is_one(&g) {
                for j in col..cols {
                    m[i][j] = int::div_exact(&m[i][j], &g).expect("gcd divides");
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
