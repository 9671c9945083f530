use super::pd::{assemble_block, pd_block_step, pd_init, scalar};
use super::WeightedProblem;
use crate::arith::RatFun;
use crate::error::{Error, Result};
use crate::matrix::RfMatrix;

/// Which update formula a stage used for `b_i^*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `c_i != 0`: `b_i^* = (c^T M c)^{-1} c^T M`.
    NonZeroC,
    /// `c_i = 0`: `b_i^* = δ_i^{-1} (d^T N_{i-1} - l^T) X_{i-1}`.
    ZeroC,
}

/// Working state of the recursion after stage `i`.
///
/// `x` and `ninv` always hold `X_i` and `N_i^{-1}`. The remaining fields are
/// scratch values for the stage being computed and are reset when the stage
/// is assembled.
#[derive(Clone, Debug)]
pub struct PartitionState {
    pub i: usize,
    /// `X_i`, `i x m`.
    pub x: RfMatrix,
    /// `N_i^{-1}`, `i x i`.
    pub ninv: RfMatrix,
    pub d: Option<RfMatrix>,
    pub c: Option<RfMatrix>,
    pub b_star: Option<RfMatrix>,
    /// Only set on the `c = 0` branch.
    pub delta: Option<RatFun>,
}

/// Snapshot of one finished stage.
#[derive(Clone, Debug)]
pub struct StageTrace {
    pub stage: usize,
    /// `None` for stage 1.
    pub branch: Option<Branch>,
    pub x: RfMatrix,
}

/// Weighted pseudoinverse of a single column:
/// `(a^T M a)^{-1} a^T M`, or `a^T` when `a = 0`.
pub fn column_pinv_init(a1: &RfMatrix, m_weight: &RfMatrix) -> Result<RfMatrix> {
    let a1t = a1.transpose();
    if a1.is_zero() {
        return Ok(a1t);
    }
    let a1t_m = a1t.mul(m_weight)?;
    let quad = a1t_m.mul(a1)?;
    let quad = scalar(&quad)?;
    if quad.is_zero() {
        return Err(Error::DegenerateWeight {
            stage: 1,
            quantity: "a1^T M a1",
        });
    }
    Ok(a1t_m.scale(&quad.inv()?))
}

impl PartitionState {
    /// Stage 1: `X_1` and `N_1^{-1}`.
    pub fn start(problem: &WeightedProblem) -> Result<Self> {
        let a1 = problem.a().column(1)?;
        Ok(Self {
            i: 1,
            x: column_pinv_init(&a1, problem.m_weight())?,
            ninv: pd_init(problem.n_weight())?,
            d: None,
            c: None,
            b_star: None,
            delta: None,
        })
    }

    fn expect_stage(&self, i: usize, problem: &WeightedProblem) -> Result<()> {
        let n = problem.shape().1;
        if i < 2 || i > n {
            return Err(Error::IndexOutOfRange { index: i, bound: n });
        }
        if self.i + 1 != i {
            return Err(Error::Internal("stage index does not follow the state"));
        }
        Ok(())
    }

    fn d(&self) -> Result<&RfMatrix> {
        self.d.as_ref().ok_or(Error::Internal("d not computed for this stage"))
    }

    /// Advances to stage `i = self.i + 1`, choosing the branch from `c_i`.
    pub fn advance(&mut self, problem: &WeightedProblem) -> Result<Branch> {
        let i = self.i + 1;
        let (d, c) = compute_d_c(self, problem, i)?;
        let branch = if c.is_zero() { Branch::ZeroC } else { Branch::NonZeroC };
        self.d = Some(d);
        self.c = Some(c);
        if branch == Branch::ZeroC {
            self.delta = Some(compute_delta(self, problem, i)?);
        }
        self.b_star = Some(compute_b(self, problem, i)?);
        let x = assemble_next(self, problem, i)?;
        let part = problem.n_weight().principal_partition(i)?;
        let (e, f, g) = pd_block_step(&self.ninv, &part)?;
        *self = Self {
            i,
            x,
            ninv: assemble_block(&e, &f, &g)?,
            d: None,
            c: None,
            b_star: None,
            delta: None,
        };
        Ok(branch)
    }
}

/// `d_i = X_{i-1} a_i` and `c_i = a_i - Â_{i-1} d_i`.
pub fn compute_d_c(state: &PartitionState, problem: &WeightedProblem, i: usize) -> Result<(RfMatrix, RfMatrix)> {
    state.expect_stage(i, problem)?;
    let a_i = problem.a().column(i)?;
    let a_prev = problem.a().leading_columns(i - 1)?;
    let d = state.x.mul(&a_i)?;
    let c = a_i.sub(&a_prev.mul(&d)?)?;
    Ok((d, c))
}

/// `(I - X_{i-1} Â_{i-1}) N_{i-1}^{-1} l_i`, the correction shared by `δ_i`
/// and the update of `X_i`.
fn sigma(state: &PartitionState, problem: &WeightedProblem, i: usize, l: &RfMatrix) -> Result<RfMatrix> {
    let a_prev = problem.a().leading_columns(i - 1)?;
    let proj = RfMatrix::identity(i - 1).sub(&state.x.mul(&a_prev)?)?;
    proj.mul(&state.ninv.mul(l)?)
}

/// `δ_i = n_ii + d^T N_{i-1} d - (d^T l + l^T d) - l^T σ_i` for the `c = 0`
/// branch.
pub fn compute_delta(state: &PartitionState, problem: &WeightedProblem, i: usize) -> Result<RatFun> {
    state.expect_stage(i, problem)?;
    let d = state.d()?;
    let part = problem.n_weight().principal_partition(i)?;
    let dt = d.transpose();
    let lt = part.l.transpose();
    let dnd = dt.mul(&part.n_prev)?.mul(d)?;
    let dl = dt.mul(&part.l)?;
    let ls = lt.mul(&sigma(state, problem, i, &part.l)?)?;
    let dl = scalar(&dl)?;
    let delta = &(&part.n_ii + scalar(&dnd)?) - &(&(dl + dl) + scalar(&ls)?);
    if delta.is_zero() {
        return Err(Error::DegenerateWeight { stage: i, quantity: "delta" });
    }
    Ok(delta)
}

/// The new last row `b_i^*` of `X_i`.
pub fn compute_b(state: &PartitionState, problem: &WeightedProblem, i: usize) -> Result<RfMatrix> {
    state.expect_stage(i, problem)?;
    let c = state.c.as_ref().ok_or(Error::Internal("c not computed for this stage"))?;
    if !c.is_zero() {
        let ct_m = c.transpose().mul(problem.m_weight())?;
        let quad = ct_m.mul(c)?;
        let quad = scalar(&quad)?;
        if quad.is_zero() {
            return Err(Error::DegenerateWeight {
                stage: i,
                quantity: "c^T M c",
            });
        }
        return Ok(ct_m.scale(&quad.inv()?));
    }
    let delta = state.delta.as_ref().ok_or(Error::Internal("delta not computed for this stage"))?;
    let part = problem.n_weight().principal_partition(i)?;
    let row = state.d()?.transpose().mul(&part.n_prev)?.sub(&part.l.transpose())?;
    Ok(row.mul(&state.x)?.scale(&delta.inv()?))
}

/// `X_i = [X_{i-1} - (d_i + σ_i) b_i^* ; b_i^*]`.
pub fn assemble_next(state: &PartitionState, problem: &WeightedProblem, i: usize) -> Result<RfMatrix> {
    state.expect_stage(i, problem)?;
    let b = state.b_star.as_ref().ok_or(Error::Internal("b* not computed for this stage"))?;
    let part = problem.n_weight().principal_partition(i)?;
    let col = state.d()?.add(&sigma(state, problem, i, &part.l)?)?;
    state.x.sub(&col.mul(b)?)?.vstack(b)
}

/// `A†_{MN}` by the column recursion, an `n x m` matrix.
pub fn wmp_inverse(problem: &WeightedProblem) -> Result<RfMatrix> {
    run(problem, |_| {})
}

/// As [`wmp_inverse`], also returning every intermediate `X_i` with the
/// branch that produced it.
pub fn wmp_inverse_traced(problem: &WeightedProblem) -> Result<(RfMatrix, Vec<StageTrace>)> {
    let mut trace = Vec::new();
    let x = run(problem, |t| trace.push(t))?;
    Ok((x, trace))
}

fn run(problem: &WeightedProblem, mut record: impl FnMut(StageTrace)) -> Result<RfMatrix> {
    let (m, n) = problem.shape();
    if n == 0 {
        return Ok(RfMatrix::zeros(0, m));
    }
    let mut state = PartitionState::start(problem)?;
    record(StageTrace {
        stage: 1,
        branch: None,
        x: state.x.clone(),
    });
    while state.i < n {
        let branch = state.advance(problem)?;
        record(StageTrace {
            stage: state.i,
            branch: Some(branch),
            x: state.x.clone(),
        });
    }
    Ok(state.x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::UniPoly;

    fn c(n: i64) -> RatFun {
        RatFun::from_int(n)
    }

    fn half() -> RatFun {
        RatFun::new(UniPoly::from_i64s(&[1]), UniPoly::from_i64s(&[2])).unwrap()
    }

    fn row_problem(n22: i64) -> WeightedProblem {
        let a = RfMatrix::from_rows(vec![vec![c(1), c(1)]]).unwrap();
        let n = RfMatrix::from_rows(vec![vec![c(1), c(0)], vec![c(0), c(n22)]]).unwrap();
        WeightedProblem::new(a, RfMatrix::identity(1), n).unwrap()
    }

    #[test]
    fn init_column() {
        let col = RfMatrix::from_rows(vec![vec![c(1)], vec![c(1)]]).unwrap();
        let x1 = column_pinv_init(&col, &RfMatrix::identity(2)).unwrap();
        assert_eq!(x1, RfMatrix::from_rows(vec![vec![half(), half()]]).unwrap());
        assert_eq!(column_pinv_init(&RfMatrix::zeros(3, 1), &RfMatrix::identity(3)).unwrap(), RfMatrix::zeros(1, 3));
        let one = RfMatrix::identity(1);
        assert_eq!(column_pinv_init(&one, &one).unwrap(), one);
    }

    #[test]
    fn degenerate_row_weight() {
        let col = RfMatrix::from_rows(vec![vec![c(1)], vec![c(1)]]).unwrap();
        let m = RfMatrix::from_rows(vec![vec![c(1), c(0)], vec![c(0), c(-1)]]).unwrap();
        assert_eq!(
            column_pinv_init(&col, &m),
            Err(Error::DegenerateWeight {
                stage: 1,
                quantity: "a1^T M a1"
            })
        );
    }

    #[test]
    fn zero_branch_by_hand() {
        let problem = row_problem(1);
        let mut state = PartitionState::start(&problem).unwrap();
        let (d, cv) = compute_d_c(&state, &problem, 2).unwrap();
        assert_eq!(d, RfMatrix::identity(1));
        assert!(cv.is_zero());
        state.d = Some(d);
        state.c = Some(cv);
        let delta = compute_delta(&state, &problem, 2).unwrap();
        assert_eq!(delta, c(2));
        state.delta = Some(delta);
        let b = compute_b(&state, &problem, 2).unwrap();
        assert_eq!(b, RfMatrix::scalar(half()));
        state.b_star = Some(b);
        let x2 = assemble_next(&state, &problem, 2).unwrap();
        assert_eq!(x2, RfMatrix::from_rows(vec![vec![half()], vec![half()]]).unwrap());
    }

    #[test]
    fn zero_branch_weighted_delta() {
        let problem = row_problem(4);
        let mut state = PartitionState::start(&problem).unwrap();
        let (d, cv) = compute_d_c(&state, &problem, 2).unwrap();
        state.d = Some(d);
        state.c = Some(cv);
        assert_eq!(compute_delta(&state, &problem, 2).unwrap(), c(5));
    }

    #[test]
    fn identity_stage_two() {
        let problem = WeightedProblem::unweighted(RfMatrix::identity(2));
        let mut state = PartitionState::start(&problem).unwrap();
        let (d, cv) = compute_d_c(&state, &problem, 2).unwrap();
        assert!(d.is_zero());
        assert_eq!(cv, RfMatrix::from_rows(vec![vec![c(0)], vec![c(1)]]).unwrap());
        state.d = Some(d);
        state.c = Some(cv);
        let b = compute_b(&state, &problem, 2).unwrap();
        assert_eq!(b, RfMatrix::from_rows(vec![vec![c(0), c(1)]]).unwrap());
        assert_eq!(state.advance(&problem).unwrap(), Branch::NonZeroC);
        assert_eq!(state.x, RfMatrix::identity(2));
        assert_eq!(state.ninv, RfMatrix::identity(2));
    }

    #[test]
    fn stage_index_checks() {
        let problem = WeightedProblem::unweighted(RfMatrix::identity(2));
        let state = PartitionState::start(&problem).unwrap();
        assert!(matches!(compute_d_c(&state, &problem, 3), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(compute_d_c(&state, &problem, 1), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn identity_and_shape() {
        for n in 1..=4 {
            let x = wmp_inverse(&WeightedProblem::unweighted(RfMatrix::identity(n))).unwrap();
            assert_eq!(x, RfMatrix::identity(n));
        }
        let a = RfMatrix::from_rows(vec![vec![RatFun::s(), c(1), c(0)], vec![c(0), c(0), c(1)]]).unwrap();
        let (x, trace) = wmp_inverse_traced(&WeightedProblem::unweighted(a)).unwrap();
        assert_eq!(x.shape(), (3, 2));
        assert_eq!(trace.len(), 3);
        assert_eq!(trace[1].branch, Some(Branch::ZeroC));
        assert_eq!(trace[2].branch, Some(Branch::NonZeroC));
    }
}
