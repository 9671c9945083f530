use std::fmt;

use num_traits::Zero;

use crate::arith::{BigRational, RatFun, UniPoly};
use crate::error::{Error, Result};
use crate::matrix::{QMatrix, RfMatrix};

/// Polynomial matrix `Σ_j C_j s^j` stored as its constant coefficient
/// matrices, lowest power first. Trailing zero coefficients are trimmed, so
/// the zero matrix has no coefficients at all.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    coeffs: Vec<QMatrix>,
}

/// Block split of a polynomial weight, as for [`crate::PrincipalPartition`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyPartition {
    pub n_prev: PolyMatrix,
    pub l: PolyMatrix,
    pub n_ii: UniPoly,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, coeffs: Vec<QMatrix>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| c.shape() != (rows, cols)) {
            return Err(Error::DimensionMismatch {
                op: "PolyMatrix::new",
                left: (rows, cols),
                right: bad.shape(),
            });
        }
        Ok(Self::trimmed(rows, cols, coeffs))
    }

    fn trimmed(rows: usize, cols: usize, mut coeffs: Vec<QMatrix>) -> Self {
        while coeffs.last().is_some_and(QMatrix::is_zero) {
            coeffs.pop();
        }
        Self { rows, cols, coeffs }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            coeffs: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::constant(QMatrix::identity(n))
    }

    pub fn constant(c: QMatrix) -> Self {
        let (rows, cols) = c.shape();
        Self::trimmed(rows, cols, vec![c])
    }

    /// Builds a matrix from row-major entry polynomials.
    pub fn from_entries(rows: usize, cols: usize, entries: &[UniPoly]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "PolyMatrix::from_entries",
                left: (rows, cols),
                right: (entries.len(), 1),
            });
        }
        let len = entries.iter().map(UniPoly::len).max().unwrap_or(0);
        let coeffs = (0..len)
            .map(|j| QMatrix::from_fn(rows, cols, |r, c| entries[r * cols + c].coeff(j)))
            .collect();
        Ok(Self::trimmed(rows, cols, coeffs))
    }

    /// Splits a matrix with polynomial entries into coefficient matrices.
    /// Any entry with a nontrivial denominator is rejected by its 1-based
    /// position.
    pub fn from_rf_matrix(a: &RfMatrix) -> Result<Self> {
        let mut entries = Vec::with_capacity(a.rows() * a.cols());
        for (k, x) in a.entries().iter().enumerate() {
            match x.as_polynomial() {
                Some(p) => entries.push(p),
                None => {
                    return Err(Error::NotPolynomial {
                        row: k / a.cols() + 1,
                        col: k % a.cols() + 1,
                    })
                }
            }
        }
        Self::from_entries(a.rows(), a.cols(), &entries)
    }

    pub fn to_rf_matrix(&self) -> RfMatrix {
        RfMatrix::from_fn(self.rows, self.cols, |r, c| RatFun::from_poly(self.entry(r, c)))
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

    pub fn coeffs(&self) -> &[QMatrix] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest power with a nonzero coefficient; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Entry `(r, c)` (0-based) as a polynomial.
    pub fn entry(&self, r: usize, c: usize) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|m| m.get(r, c).clone()).collect())
    }

    pub fn entries(&self) -> Vec<UniPoly> {
        (0..self.rows)
            .flat_map(|r| (0..self.cols).map(move |c| (r, c)))
            .map(|(r, c)| self.entry(r, c))
            .collect()
    }

    /// The single entry of a `1 x 1` matrix.
    pub fn as_scalar(&self) -> Option<UniPoly> {
        (self.shape() == (1, 1)).then(|| self.entry(0, 0))
    }

    pub fn scalar(p: &UniPoly) -> Self {
        Self::from_entries(1, 1, std::slice::from_ref(p)).expect("1x1")
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: self.cols,
            cols: self.rows,
            coeffs: self.coeffs.iter().map(QMatrix::transpose).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::from_integer(1.into()))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::trimmed(self.rows, self.cols, self.coeffs.iter().map(|m| m.scale(k)).collect())
    }

    fn combine(&self, other: &Self, op: &'static str, sub: bool) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        // the shorter operand is padded with zero matrices
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = QMatrix::zeros(self.rows, self.cols);
        let coeffs = (0..len)
            .map(|j| {
                let a = self.coeffs.get(j).unwrap_or(&zero);
                let b = other.coeffs.get(j).unwrap_or(&zero);
                if sub { a.sub(b) } else { a.add(b) }.expect("same shape")
            })
            .collect();
        Ok(Self::trimmed(self.rows, self.cols, coeffs))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, "add", false)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, "sub", true)
    }

    /// Matrix product: the coefficient convolution `Σ_k A_{j-k} B_k`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zeros(self.rows, other.cols));
        }
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        let mut coeffs = vec![QMatrix::zeros(self.rows, other.cols); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + k] = coeffs[i + k].add(&a.mul(b)?)?;
            }
        }
        Ok(Self::trimmed(self.rows, other.cols, coeffs))
    }

    /// Product with a scalar polynomial.
    pub fn mul_poly(&self, p: &UniPoly) -> Self {
        if self.is_zero() || p.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let len = self.coeffs.len() + p.len() - 1;
        let mut coeffs = vec![QMatrix::zeros(self.rows, self.cols); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (k, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    coeffs[i + k] = coeffs[i + k].add(&a.scale(c)).expect("same shape");
                }
            }
        }
        Self::trimmed(self.rows, self.cols, coeffs)
    }

    pub fn vstack(&self, below: &Self) -> Result<Self> {
        if self.cols != below.cols {
            return Err(Error::DimensionMismatch {
                op: "vstack",
                left: self.shape(),
                right: below.shape(),
            });
        }
        let rows = self.rows + below.rows;
        let len = self.coeffs.len().max(below.coeffs.len());
        let coeffs = (0..len)
            .map(|j| {
                QMatrix::from_fn(rows, self.cols, |r, c| {
                    let (src, r) = if r < self.rows { (self, r) } else { (below, r - self.rows) };
                    src.coeffs.get(j).map_or_else(BigRational::zero, |m| m.get(r, c).clone())
                })
            })
            .collect();
        Ok(Self::trimmed(rows, self.cols, coeffs))
    }

    /// Rows `r0..r1`, columns `c0..c1` (0-based, half open), trimmed.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|m| QMatrix::from_fn(r1 - r0, c1 - c0, |r, c| m.get(r0 + r, c0 + c).clone()))
            .collect();
        Self::trimmed(r1 - r0, c1 - c0, coeffs)
    }

    /// Column `i` (1-based).
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

    pub fn principal_partition(&self, i: usize) -> Result<PolyPartition> {
        if self.rows != self.cols {
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
        Ok(PolyPartition {
            n_prev: self.submatrix(0, i - 1, 0, i - 1),
            l: self.submatrix(0, i - 1, i - 1, i),
            n_ii: self.entry(i - 1, i - 1),
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && self.coeffs.iter().all(|m| *m == m.transpose())
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_rf_matrix().fmt(f)
    }
}
