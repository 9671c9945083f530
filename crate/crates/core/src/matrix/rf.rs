use std::fmt;
use std::ops::Index;

use num_rational::BigRational;

use super::QMatrix;
use crate::arith::RatFun;
use crate::error::{Error, Result};

/// Dense matrix over the rational-function field, row-major.
///
/// Positional accessors (`get`, indexing) are 0-based. The partition-oriented
/// operations (`column`, `leading_columns`, `principal_partition`) take the
/// 1-based stage index `i` used by the recursions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RfMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RatFun>,
}

/// Block split of the leading `i x i` submatrix of a square matrix:
///
/// ```text
/// N_i = [ N_{i-1}   l_i  ]
///       [ l_i^T     n_ii ]
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalPartition {
    pub n_prev: RfMatrix,
    pub l: RfMatrix,
    pub n_ii: RatFun,
}

impl RfMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<RatFun>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "RfMatrix::new",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<RatFun>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n_cols) {
            return Err(Error::DimensionMismatch {
                op: "RfMatrix::from_rows",
                left: (n_rows, n_cols),
                right: (1, bad.len()),
            });
        }
        Ok(Self {
            rows: n_rows,
            cols: n_cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RatFun) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![RatFun::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { RatFun::one() } else { RatFun::zero() })
    }

    pub fn from_qmatrix(q: &QMatrix) -> Self {
        Self::from_fn(q.rows(), q.cols(), |r, c| RatFun::from_rational(q.get(r, c).clone()))
    }

    pub fn scalar(x: RatFun) -> Self {
        Self {
            rows: 1,
            cols: 1,
            data: vec![x],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &RatFun {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: RatFun) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[RatFun] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<RatFun> {
        self.data
    }

    /// Exact zero test: every entry is the canonical `0/1`.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RatFun::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    /// Single entry of a 1x1 matrix.
    pub fn as_scalar(&self) -> Option<&RatFun> {
        (self.shape() == (1, 1)).then(|| &self.data[0])
    }

    fn check_same(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other, "add")?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other, "sub")?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = RatFun::zero();
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    let b = other.get(k, c);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * b);
                }
                data.push(acc);
            }
        }
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, k: &RatFun) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    /// Transpose. Coefficients are real, so this is also the conjugate
    /// transpose.
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn hstack(&self, right: &Self) -> Result<Self> {
        if self.rows != right.rows {
            return Err(Error::DimensionMismatch {
                op: "hstack",
                left: self.shape(),
                right: right.shape(),
            });
        }
        Ok(Self::from_fn(self.rows, self.cols + right.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                right.get(r, c - self.cols).clone()
            }
        }))
    }

    pub fn vstack(&self, below: &Self) -> Result<Self> {
        if self.cols != below.cols {
            return Err(Error::DimensionMismatch {
                op: "vstack",
                left: self.shape(),
                right: below.shape(),
            });
        }
        let mut data = self.data.clone();
        data.extend(below.data.iter().cloned());
        Ok(Self {
            rows: self.rows + below.rows,
            cols: self.cols,
            data,
        })
    }

    /// Rows `r0..r1` and columns `c0..c1` (0-based, half open).
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    /// The `i`-th column (1-based) as an `m x 1` matrix.
    pub fn column(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.cols {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: self.cols,
            });
        }
        Ok(self.submatrix(0, self.rows, i - 1, i))
    }

    /// The first `i` columns.
    pub fn leading_columns(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.cols {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: self.cols,
            });
        }
        Ok(self.submatrix(0, self.rows, 0, i))
    }

    /// Splits the leading `i x i` block into `N_{i-1}`, `l_i`, `n_ii`.
    /// Requires a square matrix and `2 <= i <= size`.
    pub fn principal_partition(&self, i: usize) -> Result<PrincipalPartition> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                what: "partitioned matrix",
                rows: self.rows,
                cols: self.cols,
            });
        }
        if i < 2 || i > self.rows {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: self.rows,
            });
        }
        Ok(PrincipalPartition {
            n_prev: self.submatrix(0, i - 1, 0, i - 1),
            l: self.submatrix(0, i - 1, i - 1, i),
            n_ii: self.get(i - 1, i - 1).clone(),
        })
    }

    /// Entrywise evaluation at `s0`.
    pub fn eval(&self, s0: &BigRational) -> Result<QMatrix> {
        let mut data = Vec::with_capacity(self.data.len());
        for (k, x) in self.data.iter().enumerate() {
            match x.eval(s0) {
                Ok(v) => data.push(v),
                Err(Error::Pole { point, .. }) => {
                    return Err(Error::Pole {
                        position: Some((k / self.cols + 1, k % self.cols + 1)),
                        point,
                    })
                }
                Err(e) => return Err(e),
            }
        }
        QMatrix::new(self.rows, self.cols, data)
    }
}

impl PrincipalPartition {
    /// Rebuilds the `i x i` block from its parts.
    pub fn reassemble(&self) -> Result<RfMatrix> {
        let top = self.n_prev.hstack(&self.l)?;
        let bottom = self.l.transpose().hstack(&RfMatrix::scalar(self.n_ii.clone()))?;
        top.vstack(&bottom)
    }
}

impl Index<(usize, usize)> for RfMatrix {
    type Output = RatFun;
    fn index(&self, (r, c): (usize, usize)) -> &RatFun {
        self.get(r, c)
    }
}

impl fmt::Display for RfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, "; ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
