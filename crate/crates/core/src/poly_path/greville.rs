use super::capacity::{conv, sum, CapacityCheck, CapacityLog};
use super::pd::PdPolyState;
use super::{fraction_simplify, MatrixPolyFraction, PolyMatrix};
use crate::arith::UniPoly;
use crate::error::{Error, Result};
use crate::rational_path::Branch;

/// Polynomial triple `(A, M, N)` with the same shape rules as
/// [`crate::WeightedProblem`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyProblem {
    a: PolyMatrix,
    m_weight: PolyMatrix,
    n_weight: PolyMatrix,
}

fn check_weight(w: &PolyMatrix, size: usize, what: &'static str, a: &PolyMatrix) -> Result<()> {
    if w.rows() != w.cols() {
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

impl PolyProblem {
    pub fn new(a: PolyMatrix, m_weight: PolyMatrix, n_weight: PolyMatrix) -> Result<Self> {
        check_weight(&m_weight, a.rows(), "row weight M", &a)?;
        check_weight(&n_weight, a.cols(), "column weight N", &a)?;
        Ok(Self { a, m_weight, n_weight })
    }

    pub fn unweighted(a: PolyMatrix) -> Self {
        let m_weight = PolyMatrix::identity(a.rows());
        let n_weight = PolyMatrix::identity(a.cols());
        Self { a, m_weight, n_weight }
    }

    pub fn a(&self) -> &PolyMatrix {
        &self.a
    }

    pub fn m_weight(&self) -> &PolyMatrix {
        &self.m_weight
    }

    pub fn n_weight(&self) -> &PolyMatrix {
        &self.n_weight
    }

    fn degrees(&self) -> (usize, usize, usize) {
        (
            self.a.degree().unwrap_or(0),
            self.m_weight.degree().unwrap_or(0),
            self.n_weight.degree().unwrap_or(0),
        )
    }
}

/// Degree capacities in force at one stage. `q`, `m_q`, `n_q` are the
/// degrees of `A`, `M`, `N`; `nbar_q`, `ndbar_q` those of `N_{i-1}^{-1}`;
/// `q_prev`, `p_prev` those of `Z_{i-1}`, `Y_{i-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StageBounds {
    pub q: usize,
    pub m_q: usize,
    pub n_q: usize,
    pub nbar_q: usize,
    pub ndbar_q: usize,
    pub q_prev: usize,
    pub p_prev: usize,
    pub q_hat: usize,
    pub b_bar: usize,
    pub b_dbar: usize,
    /// Only on the `c = 0` branch.
    pub delta_bar_q: Option<usize>,
    pub delta_dbar_q: Option<usize>,
    pub q_i: usize,
    pub p_i: usize,
}

/// Working state of the coefficient recursion: `X_i = Z_i / Y_i`.
///
/// `pd` carries `N_i^{-1}` as `N̄_i / N̿_i`. The optional fields hold the
/// sequences of the stage being computed and are cleared once the stage is
/// assembled.
#[derive(Clone, Debug)]
pub struct PolyPartitionState {
    pub i: usize,
    pub z: PolyMatrix,
    pub y: UniPoly,
    /// Capacities of `z` and `y`.
    pub q_cap: usize,
    pub p_cap: usize,
    pub pd: PdPolyState,
    pub d: Option<PolyMatrix>,
    pub c: Option<PolyMatrix>,
    pub phi: Option<PolyMatrix>,
    pub psi: Option<UniPoly>,
    pub delta_bar: Option<UniPoly>,
    pub delta_dbar: Option<UniPoly>,
    pub v: Option<PolyMatrix>,
    pub w: Option<UniPoly>,
    pub theta: Option<PolyMatrix>,
    pub bounds: Option<StageBounds>,
}

/// One finished stage of [`poly_wmp_inverse_traced`].
#[derive(Clone, Debug)]
pub struct PolyStageTrace {
    pub stage: usize,
    pub branch: Option<Branch>,
    pub x: MatrixPolyFraction,
    pub bounds: Option<StageBounds>,
    pub checks: Vec<CapacityCheck>,
}

fn deg(p: &UniPoly) -> Option<usize> {
    p.degree()
}

fn mdeg(m: &PolyMatrix) -> Option<usize> {
    m.degree()
}

fn scalar(m: &PolyMatrix) -> Result<UniPoly> {
    m.as_scalar().ok_or(Error::Internal("expected a 1x1 product"))
}

fn need<'a, T>(x: &'a Option<T>, what: &'static str) -> Result<&'a T> {
    x.as_ref().ok_or(Error::Internal(what))
}

/// Stage 1 numerator and denominator: `Z_1 = a_1^T M`, `Y_1 = a_1^T M a_1`,
/// or `Z_1 = 0`, `Y_1 = 1` for a zero column. Not simplified.
pub fn poly_init_zy(a1: &PolyMatrix, m_weight: &PolyMatrix) -> Result<(PolyMatrix, UniPoly)> {
    if a1.is_zero() {
        return Ok((PolyMatrix::zeros(1, a1.rows()), UniPoly::one()));
    }
    let z = a1.transpose().mul(m_weight)?;
    let y = scalar(&z.mul(a1)?)?;
    if y.is_zero() {
        return Err(Error::DegenerateWeight {
            stage: 1,
            quantity: "a1^T M a1",
        });
    }
    Ok((z, y))
}

/// `d_i = Z_{i-1} a_i`.
pub fn poly_step_d(state: &PolyPartitionState, a_i: &PolyMatrix) -> Result<PolyMatrix> {
    state.z.mul(a_i)
}

/// `c_i = a_i Y_{i-1} - Â_{i-1} d_i`.
pub fn poly_step_c(state: &PolyPartitionState, a_i: &PolyMatrix, a_prefix: &PolyMatrix) -> Result<PolyMatrix> {
    let d = need(&state.d, "d not computed for this stage")?;
    a_i.mul_poly(&state.y).sub(&a_prefix.mul(d)?)
}

/// `φ_i = (Y_{i-1} I - Z_{i-1} Â_{i-1}) N̄_{i-1} l_i` and
/// `ψ_i = Y_{i-1} N̿_{i-1}`, so that
/// `(I - X_{i-1} Â_{i-1}) N_{i-1}^{-1} l_i = φ_i / ψ_i`.
pub fn poly_step_phi_psi(state: &PolyPartitionState, problem: &PolyProblem) -> Result<(PolyMatrix, UniPoly)> {
    let i = state.i + 1;
    let a_prev = problem.a().leading_columns(i - 1)?;
    let part = problem.n_weight().principal_partition(i)?;
    let proj = PolyMatrix::identity(i - 1).mul_poly(&state.y).sub(&state.z.mul(&a_prev)?)?;
    let phi = proj.mul(&state.pd.n_bar)?.mul(&part.l)?;
    let psi = &state.y * &state.pd.n_dbar;
    Ok((phi, psi))
}

/// `Δ̄_i / Δ̿_i = δ_i^{-1}` on the `c = 0` branch, with
/// `Δ̄ = Y² N̿` and
/// `Δ̿ = (n̂ Y² + dᵀ N_{i-1} d - (dᵀ l + lᵀ d) Y) N̿ - lᵀ φ Y`.
pub fn poly_step_delta(state: &PolyPartitionState, problem: &PolyProblem) -> Result<(UniPoly, UniPoly)> {
    let i = state.i + 1;
    let d = need(&state.d, "d not computed for this stage")?;
    let phi = need(&state.phi, "phi not computed for this stage")?;
    let part = problem.n_weight().principal_partition(i)?;
    let y = &state.y;
    let y2 = y * y;
    let dt = d.transpose();
    let lt = part.l.transpose();
    let dnd = scalar(&dt.mul(&part.n_prev)?.mul(d)?)?;
    let dl = scalar(&dt.mul(&part.l)?)?;
    let inner = &(&(&part.n_ii * &y2) + &dnd) - &(&(&dl + &dl) * y);
    let l_phi = scalar(&lt.mul(phi)?)?;
    let delta_dbar = &(&inner * &state.pd.n_dbar) - &(&l_phi * y);
    if delta_dbar.is_zero() {
        return Err(Error::DegenerateWeight { stage: i, quantity: "delta" });
    }
    Ok((&y2 * &state.pd.n_dbar, delta_dbar))
}

/// `b_i^* = V_i / W_i`.
///
/// `c ≠ 0`: `V = Y cᵀ M`, `W = cᵀ M c`.
/// `c = 0`: `V = Δ̄ (dᵀ N_{i-1} - lᵀ Y) Z`, `W = Δ̿ Y²`.
pub fn poly_step_vw(state: &PolyPartitionState, problem: &PolyProblem) -> Result<(PolyMatrix, UniPoly)> {
    let i = state.i + 1;
    let c = need(&state.c, "c not computed for this stage")?;
    if !c.is_zero() {
        let ct_m = c.transpose().mul(problem.m_weight())?;
        let w = scalar(&ct_m.mul(c)?)?;
        if w.is_zero() {
            return Err(Error::DegenerateWeight {
                stage: i,
                quantity: "c^T M c",
            });
        }
        return Ok((ct_m.mul_poly(&state.y), w));
    }
    let d = need(&state.d, "d not computed for this stage")?;
    let delta_bar = need(&state.delta_bar, "delta not computed for this stage")?;
    let delta_dbar = need(&state.delta_dbar, "delta not computed for this stage")?;
    let part = problem.n_weight().principal_partition(i)?;
    let row = d.transpose().mul(&part.n_prev)?.sub(&part.l.transpose().mul_poly(&state.y))?;
    let v = row.mul(&state.z)?.mul_poly(delta_bar);
    let w = &(delta_dbar * &state.y) * &state.y;
    Ok((v, w))
}

/// `Θ_i = Z_{i-1} N̿ W - d N̿ V - φ V`.
pub fn poly_step_theta(state: &PolyPartitionState) -> Result<PolyMatrix> {
    let d = need(&state.d, "d not computed for this stage")?;
    let phi = need(&state.phi, "phi not computed for this stage")?;
    let v = need(&state.v, "V not computed for this stage")?;
    let w = need(&state.w, "W not computed for this stage")?;
    let nd = &state.pd.n_dbar;
    let t1 = state.z.mul_poly(&(nd * w));
    let t2 = d.mul_poly(nd).mul(v)?;
    let t3 = phi.mul(v)?;
    t1.sub(&t2)?.sub(&t3)
}

/// `Z_i = [Θ_i ; ψ_i V_i]`, `Y_i = ψ_i W_i`, simplified.
pub fn poly_step_zy(state: &PolyPartitionState) -> Result<(PolyMatrix, UniPoly)> {
    let (z, y) = raw_zy(state)?;
    fraction_simplify(&z, &y)
}

fn raw_zy(state: &PolyPartitionState) -> Result<(PolyMatrix, UniPoly)> {
    let theta = match &state.theta {
        Some(t) => t.clone(),
        None => poly_step_theta(state)?,
    };
    let psi = need(&state.psi, "psi not computed for this stage")?;
    let v = need(&state.v, "V not computed for this stage")?;
    let w = need(&state.w, "W not computed for this stage")?;
    let y = psi * w;
    if y.is_zero() {
        return Err(Error::Internal("stage denominator vanished"));
    }
    Ok((theta.vstack(&v.mul_poly(psi))?, y))
}

impl PolyPartitionState {
    /// Stage 1, with its capacity checks.
    pub fn start(problem: &PolyProblem) -> Result<(Self, Vec<CapacityCheck>)> {
        let (q, m_q, _) = problem.degrees();
        let a1 = problem.a().column(1)?;
        let (z, y) = poly_init_zy(&a1, problem.m_weight())?;
        let mut log = CapacityLog::default();
        let (q_cap, p_cap) = (q + m_q, 2 * q + m_q);
        if !a1.is_zero() {
            let a1d = mdeg(&a1);
            let md = mdeg(problem.m_weight());
            log.record(1, "Z", conv(&[a1d, md]), mdeg(&z), q_cap);
            log.record(1, "Y", conv(&[a1d, md, a1d]), deg(&y), p_cap);
        }
        let (z, y) = fraction_simplify(&z, &y)?;
        let state = Self {
            i: 1,
            z,
            y,
            q_cap,
            p_cap,
            pd: PdPolyState::start(problem.n_weight())?,
            d: None,
            c: None,
            phi: None,
            psi: None,
            delta_bar: None,
            delta_dbar: None,
            v: None,
            w: None,
            theta: None,
            bounds: None,
        };
        Ok((state, log.checks))
    }

    /// Runs stage `i = self.i + 1` and moves the state to it.
    pub fn advance(&mut self, problem: &PolyProblem) -> Result<(Branch, StageBounds, Vec<CapacityCheck>)> {
        let i = self.i + 1;
        let (q, m_q, n_q) = problem.degrees();
        let (nbar_q, ndbar_q) = (self.pd.n_bar_q, self.pd.n_dbar_q);
        let (q_prev, p_prev) = (self.q_cap, self.p_cap);
        let q_hat = p_prev.max(q_prev + q);
        let mut log = CapacityLog::default();

        let a_i = problem.a().column(i)?;
        let a_prev = problem.a().leading_columns(i - 1)?;
        let part = problem.n_weight().principal_partition(i)?;
        let (zd, yd, ad, apd) = (mdeg(&self.z), deg(&self.y), mdeg(&a_i), mdeg(&a_prev));
        let (nbd, ndd, ld) = (mdeg(&self.pd.n_bar), deg(&self.pd.n_dbar), mdeg(&part.l));

        let d = poly_step_d(self, &a_i)?;
        log.record(i, "d", conv(&[zd, ad]), mdeg(&d), q_prev + q);
        let dd = mdeg(&d);
        self.d = Some(d);

        let c = poly_step_c(self, &a_i, &a_prev)?;
        log.record(i, "c", sum(&[conv(&[ad, yd]), conv(&[apd, dd])]), mdeg(&c), q_hat + q);
        let cd = mdeg(&c);
        let branch = if c.is_zero() { Branch::ZeroC } else { Branch::NonZeroC };
        self.c = Some(c);

        let (phi, psi) = poly_step_phi_psi(self, problem)?;
        let phi_nat = conv(&[sum(&[yd, conv(&[zd, apd])]), nbd, ld]);
        log.record(i, "phi", phi_nat, mdeg(&phi), q_hat + nbar_q + n_q);
        log.record(i, "psi", conv(&[yd, ndd]), deg(&psi), p_prev + ndbar_q);
        let (phid, psid) = (mdeg(&phi), deg(&psi));
        self.phi = Some(phi);
        self.psi = Some(psi);

        let (b_bar, b_dbar, delta_bar_q, delta_dbar_q);
        let (v_nat, w_nat);
        match branch {
            Branch::NonZeroC => {
                b_bar = q_hat + q + p_prev + m_q;
                b_dbar = 2 * q_hat + 2 * q + m_q;
                delta_bar_q = None;
                delta_dbar_q = None;
                let md = mdeg(problem.m_weight());
                v_nat = conv(&[yd, cd, md]);
                w_nat = conv(&[cd, md, cd]);
            }
            Branch::ZeroC => {
                let wide = (n_q + nbar_q).max(ndbar_q);
                let (db_q, ddb_q) = (2 * p_prev + ndbar_q, 2 * q_hat + n_q + wide);
                b_bar = 2 * p_prev + ndbar_q + q_prev + q_hat + n_q;
                b_dbar = ddb_q + 2 * p_prev;
                delta_bar_q = Some(db_q);
                delta_dbar_q = Some(ddb_q);
                let (db, ddb) = poly_step_delta(self, problem)?;
                let (nd, npd) = (mdeg(&problem.n_weight().submatrix(i - 1, i, i - 1, i)), mdeg(&part.n_prev));
                log.record(i, "Delta_bar", conv(&[yd, yd, ndd]), deg(&db), db_q);
                let inner = sum(&[conv(&[nd, yd, yd]), conv(&[dd, npd, dd]), conv(&[dd, ld, yd])]);
                let ddb_nat = sum(&[conv(&[inner, ndd]), conv(&[ld, phid, yd])]);
                log.record(i, "Delta_dbar", ddb_nat, deg(&ddb), ddb_q);
                v_nat = conv(&[deg(&db), sum(&[conv(&[dd, npd]), conv(&[ld, yd])]), zd]);
                w_nat = conv(&[deg(&ddb), yd, yd]);
                self.delta_bar = Some(db);
                self.delta_dbar = Some(ddb);
            }
        }

        let (v, w) = poly_step_vw(self, problem)?;
        log.record(i, "V", v_nat, mdeg(&v), b_bar);
        log.record(i, "W", w_nat, deg(&w), b_dbar);
        let (v, w) = simplify_row(&v, &w)?;
        let (vd, wd) = (mdeg(&v), deg(&w));
        self.v = Some(v);
        self.w = Some(w);

        let q_i = q_hat + q + (nbar_q + n_q).max(ndbar_q) + b_bar.max(b_dbar);
        let p_i = p_prev + ndbar_q + b_dbar;
        let theta = poly_step_theta(self)?;
        let theta_nat = sum(&[conv(&[zd, ndd, wd]), conv(&[dd, ndd, vd]), conv(&[phid, vd])]);
        log.record(i, "Theta", theta_nat, mdeg(&theta), q_i);
        self.theta = Some(theta);
        let (z_raw, y_raw) = raw_zy(self)?;
        log.record(i, "Z", sum(&[theta_nat, conv(&[psid, vd])]), mdeg(&z_raw), q_i);
        log.record(i, "Y", conv(&[psid, wd]), deg(&y_raw), p_i);
        let (z, y) = fraction_simplify(&z_raw, &y_raw)?;

        let bounds = StageBounds {
            q,
            m_q,
            n_q,
            nbar_q,
            ndbar_q,
            q_prev,
            p_prev,
            q_hat,
            b_bar,
            b_dbar,
            delta_bar_q,
            delta_dbar_q,
            q_i,
            p_i,
        };
        let mut pd = self.pd.clone();
        log.checks.extend(pd.advance(problem.n_weight())?);
        *self = Self {
            i,
            z,
            y,
            q_cap: q_i,
            p_cap: p_i,
            pd,
            d: None,
            c: None,
            phi: None,
            psi: None,
            delta_bar: None,
            delta_dbar: None,
            v: None,
            w: None,
            theta: None,
            bounds: Some(bounds),
        };
        Ok((branch, bounds, log.checks))
    }

    pub fn fraction(&self) -> Result<MatrixPolyFraction> {
        MatrixPolyFraction::new(self.z.clone(), self.y.clone())
    }
}

fn simplify_row(v: &PolyMatrix, w: &UniPoly) -> Result<(PolyMatrix, UniPoly)> {
    if w.is_zero() {
        return Err(Error::Internal("zero W after the degeneracy checks"));
    }
    fraction_simplify(v, w)
}

/// `A†_{MN}` for polynomial `A`, `M`, `N` as a canonical `Z / Y`.
pub fn poly_wmp_inverse(a: &PolyMatrix, m_weight: &PolyMatrix, n_weight: &PolyMatrix) -> Result<MatrixPolyFraction> {
    poly_wmp_inverse_traced(a, m_weight, n_weight).map(|(x, _)| x)
}

/// As [`poly_wmp_inverse`], also returning each stage with its branch,
/// capacities and capacity checks.
pub fn poly_wmp_inverse_traced(
    a: &PolyMatrix,
    m_weight: &PolyMatrix,
    n_weight: &PolyMatrix,
) -> Result<(MatrixPolyFraction, Vec<PolyStageTrace>)> {
    let problem = PolyProblem::new(a.clone(), m_weight.clone(), n_weight.clone())?;
    let (m, n) = a.shape();
    if n == 0 {
        return Ok((MatrixPolyFraction::new(PolyMatrix::zeros(0, m), UniPoly::one())?, Vec::new()));
    }
    let (mut state, checks) = PolyPartitionState::start(&problem)?;
    let mut trace = vec![PolyStageTrace {
        stage: 1,
        branch: None,
        x: state.fraction()?,
        bounds: None,
        checks,
    }];
    while state.i < n {
        let (branch, bounds, checks) = state.advance(&problem)?;
        trace.push(PolyStageTrace {
            stage: state.i,
            branch: Some(branch),
            x: state.fraction()?,
            bounds: Some(bounds),
            checks,
        });
    }
    Ok((state.fraction()?, trace))
}
