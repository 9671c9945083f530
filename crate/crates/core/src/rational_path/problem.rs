use crate::error::{Error, Result};
use crate::matrix::RfMatrix;

/// The triple `(A, M, N)`: `A` is `m x n`, `M` is the `m x m` row weight
/// and `N` the `n x n` column weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedProblem {
    a: RfMatrix,
    m_weight: RfMatrix,
    n_weight: RfMatrix,
}

fn check_weight(w: &RfMatrix, size: usize, what: &'static str, a: &RfMatrix) -> Result<()> {
    if !w.is_square() {
        return Err(Error::NotSquare {
            what,
            rows: w.rows(),
            cols: w.cols(),
        });
    }
    if w.rows() != size {
        return Err(Error::DimensionMismatch {
            op: what,
            left: a.shape(),
            right: w.shape(),
        });
    }
    if !w.is_symmetric() {
        return Err(Error::NotSymmetric { what });
    }
    Ok(())
}

impl WeightedProblem {
    /// Checks that both weights are square, symmetric and sized to `a`.
    /// Definiteness is not certified.
    pub fn new(a: RfMatrix, m_weight: RfMatrix, n_weight: RfMatrix) -> Result<Self> {
        check_weight(&m_weight, a.rows(), "row weight M", &a)?;
        check_weight(&n_weight, a.cols(), "column weight N", &a)?;
        Ok(Self { a, m_weight, n_weight })
    }

    /// Identity weights, i.e. the ordinary Moore-Penrose problem.
    pub fn unweighted(a: RfMatrix) -> Self {
        let m_weight = RfMatrix::identity(a.rows());
        let n_weight = RfMatrix::identity(a.cols());
        Self { a, m_weight, n_weight }
    }

    pub fn a(&self) -> &RfMatrix {
        &self.a
    }

    pub fn m_weight(&self) -> &RfMatrix {
        &self.m_weight
    }

    pub fn n_weight(&self) -> &RfMatrix {
        &self.n_weight
    }

    /// `(m, n)`, the shape of `A`.
    pub fn shape(&self) -> (usize, usize) {
        self.a.shape()
    }
}
