//! Exact correctness checks: the four weighted Penrose equations,
//! agreement of the two computation paths, and pointwise evaluation.

use std::fmt;

use crate::arith::{BigRational, RatFun};
use crate::error::{Error, Result};
use crate::matrix::{generic_rank, RfMatrix};
use crate::poly_path::{poly_wmp_inverse, PolyMatrix};
use crate::rational_path::{wmp_inverse, WeightedProblem};

/// The four defining equations of `X = A†_{MN}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PenroseEquation {
    /// `A X A = A`
    Eq1,
    /// `X A X = X`
    Eq2,
    /// `(M A X)^T = M A X`
    Eq3M,
    /// `(N X A)^T = N X A`
    Eq4N,
}

impl fmt::Display for PenroseEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PenroseEquation::Eq1 => "(1)",
            PenroseEquation::Eq2 => "(2)",
            PenroseEquation::Eq3M => "(3M)",
            PenroseEquation::Eq4N => "(4N)",
        })
    }
}

/// First nonzero residual entry found, 1-based position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PenroseFailure {
    pub equation: PenroseEquation,
    pub row: usize,
    pub col: usize,
    pub residual: RatFun,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PenroseReport {
    pub eq1_holds: bool,
    pub eq2_holds: bool,
    pub eq3m_holds: bool,
    pub eq4n_holds: bool,
    pub first_failure: Option<PenroseFailure>,
}

impl PenroseReport {
    pub fn passed(&self) -> bool {
        self.eq1_holds && self.eq2_holds && self.eq3m_holds && self.eq4n_holds
    }

    /// Tags of the equations that fail.
    pub fn failed_equations(&self) -> Vec<PenroseEquation> {
        [
            (PenroseEquation::Eq1, self.eq1_holds),
            (PenroseEquation::Eq2, self.eq2_holds),
            (PenroseEquation::Eq3M, self.eq3m_holds),
            (PenroseEquation::Eq4N, self.eq4n_holds),
        ]
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(e, _)| e)
        .collect()
    }
}

impl fmt::Display for PenroseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_failure {
            None => write!(f, "all four Penrose equations hold"),
            Some(fail) => {
                let tags: Vec<String> = self.failed_equations().iter().map(ToString::to_string).collect();
                write!(
                    f,
                    "equation {} fails at ({}, {}) with residual {}; failing: {}",
                    fail.equation,
                    fail.row,
                    fail.col,
                    fail.residual,
                    tags.join(" ")
                )
            }
        }
    }
}

fn first_nonzero(m: &RfMatrix) -> Option<(usize, usize, RatFun)> {
    let cols = m.cols();
    m.entries()
        .iter()
        .position(|x| !x.is_zero())
        .map(|k| (k / cols + 1, k % cols + 1, m.entries()[k].clone()))
}

/// Evaluates the four residuals `AXA - A`, `XAX - X`, `(MAX)^T - MAX`,
/// `(NXA)^T - NXA` exactly.
pub fn penrose_check(a: &RfMatrix, m_weight: &RfMatrix, n_weight: &RfMatrix, x: &RfMatrix) -> Result<PenroseReport> {
    let (m, n) = a.shape();
    if x.shape() != (n, m) {
        return Err(Error::DimensionMismatch {
            op: "penrose_check: X must be n x m",
            left: a.shape(),
            right: x.shape(),
        });
    }
    for (w, size, op) in [(m_weight, m, "penrose_check: M"), (n_weight, n, "penrose_check: N")] {
        if w.shape() != (size, size) {
            return Err(Error::DimensionMismatch {
                op,
                left: a.shape(),
                right: w.shape(),
            });
        }
    }
    let ax = a.mul(x)?;
    let xa = x.mul(a)?;
    let max = m_weight.mul(&ax)?;
    let nxa = n_weight.mul(&xa)?;
    let residuals = [
        (PenroseEquation::Eq1, ax.mul(a)?.sub(a)?),
        (PenroseEquation::Eq2, xa.mul(x)?.sub(x)?),
        (PenroseEquation::Eq3M, max.transpose().sub(&max)?),
        (PenroseEquation::Eq4N, nxa.transpose().sub(&nxa)?),
    ];
    let mut first_failure = None;
    let mut holds = [true; 4];
    for (k, (equation, r)) in residuals.iter().enumerate() {
        if let Some((row, col, residual)) = first_nonzero(r) {
            holds[k] = false;
            first_failure.get_or_insert(PenroseFailure {
                equation: *equation,
                row,
                col,
                residual,
            });
        }
    }
    Ok(PenroseReport {
        eq1_holds: holds[0],
        eq2_holds: holds[1],
        eq3m_holds: holds[2],
        eq4n_holds: holds[3],
        first_failure,
    })
}

/// Runs both paths on polynomial input and compares the canonical results.
pub fn cross_path_check(a: &PolyMatrix, m_weight: &PolyMatrix, n_weight: &PolyMatrix) -> Result<bool> {
    let problem = WeightedProblem::new(a.to_rf_matrix(), m_weight.to_rf_matrix(), n_weight.to_rf_matrix())?;
    let rational = wmp_inverse(&problem)?;
    let poly = poly_wmp_inverse(a, m_weight, n_weight)?.to_rf_matrix()?;
    Ok(rational == poly)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkipReason {
    /// Some denominator of `A`, `M`, `N` or `X` vanishes.
    Pole,
    /// `A(s0)` has lower rank than `A(s)`.
    RankDrop { generic: usize, at_point: usize },
    /// The constant recursion hit a singular or degenerate quantity.
    Degenerate(Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointStatus {
    Pass,
    Skipped(SkipReason),
    /// The evaluated `X(s0)` differs from the constant recomputation, or the
    /// recomputation failed for a reason other than degeneracy.
    Fail(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalReport {
    pub generic_rank: usize,
    pub points: Vec<(BigRational, PointStatus)>,
}

impl EvalReport {
    /// No sample point failed. Skipped points do not count against this.
    pub fn passed(&self) -> bool {
        !self.points.iter().any(|(_, s)| matches!(s, PointStatus::Fail(_)))
    }

    pub fn passes(&self) -> usize {
        self.points.iter().filter(|(_, s)| *s == PointStatus::Pass).count()
    }

    pub fn skips(&self) -> usize {
        self.points.iter().filter(|(_, s)| matches!(s, PointStatus::Skipped(_))).count()
    }
}

/// Compares `X(s0)` with the weighted pseudoinverse of the constant problem
/// `(A(s0), M(s0), N(s0))`, recomputed by the same recursion.
///
/// Points at a pole, or where `A(s0)` loses rank relative to `A(s)`, are
/// skipped: there the symbolic inverse need not agree with the pointwise one.
pub fn eval_consistency_check(
    a: &RfMatrix,
    m_weight: &RfMatrix,
    n_weight: &RfMatrix,
    x: &RfMatrix,
    sample_points: &[BigRational],
) -> EvalReport {
    let generic = generic_rank(a);
    let points = sample_points
        .iter()
        .map(|s0| (s0.clone(), check_point(a, m_weight, n_weight, x, s0, generic)))
        .collect();
    EvalReport {
        generic_rank: generic,
        points,
    }
}

fn check_point(a: &RfMatrix, m: &RfMatrix, n: &RfMatrix, x: &RfMatrix, s0: &BigRational, generic: usize) -> PointStatus {
    let evaluated = (|| Ok::<_, Error>((a.eval(s0)?, m.eval(s0)?, n.eval(s0)?, x.eval(s0)?)))();
    let (a0, m0, n0, x0) = match evaluated {
        Ok(v) => v,
        Err(Error::Pole { .. }) => return PointStatus::Skipped(SkipReason::Pole),
        Err(e) => return PointStatus::Fail(e.to_string()),
    };
    let at_point = a0.rank();
    if at_point != generic {
        return PointStatus::Skipped(SkipReason::RankDrop { generic, at_point });
    }
    let recomputed = WeightedProblem::new(
        RfMatrix::from_qmatrix(&a0),
        RfMatrix::from_qmatrix(&m0),
        RfMatrix::from_qmatrix(&n0),
    )
    .and_then(|p| wmp_inverse(&p));
    match recomputed {
        Ok(xr) if xr == RfMatrix::from_qmatrix(&x0) => PointStatus::Pass,
        Ok(_) => PointStatus::Fail(format!("X({s0}) differs from the constant recomputation")),
        Err(e) if e.is_singularity() => PointStatus::Skipped(SkipReason::Degenerate(e)),
        Err(e) => PointStatus::Fail(e.to_string()),
    }
}
