use super::capacity::{conv, sum, CapacityCheck, CapacityLog};
use super::{fraction_simplify, MatrixPolyFraction, PolyMatrix};
use crate::arith::UniPoly;
use crate::error::{Error, Result};

/// Degree capacities of one block-inverse step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PdBounds {
    pub g_bar_q: usize,
    pub g_dbar_q: usize,
    pub f_bar_q: usize,
    pub f_dbar_q: usize,
    pub e_bar_q: usize,
    pub e_dbar_q: usize,
}

/// Stage-local sequences of the step that produced the current inverse.
///
/// With `N_i^{-1} = [E f; f^T g]`: `g = Ḡ/G̿`, `f = F̄/F̿`, `E = Ē/E̿`;
/// `p_seq - q_seq = G̿` splits the Schur complement numerator.
#[derive(Clone, Debug)]
pub struct PdStepValues {
    pub g_bar: UniPoly,
    pub g_dbar: UniPoly,
    pub f_bar: PolyMatrix,
    pub f_dbar: UniPoly,
    pub e_bar: PolyMatrix,
    pub e_dbar: UniPoly,
    pub p_seq: UniPoly,
    pub q_seq: UniPoly,
    pub bounds: PdBounds,
}

/// `N_i^{-1} = N̄_i / N̿_i` together with the capacities `n̄_q`, `n̿_q`
/// carried forward to the next step.
#[derive(Clone, Debug)]
pub struct PdPolyState {
    pub i: usize,
    pub n_bar: PolyMatrix,
    pub n_dbar: UniPoly,
    pub n_bar_q: usize,
    pub n_dbar_q: usize,
    pub last_step: Option<PdStepValues>,
}

fn deg(p: &UniPoly) -> Option<usize> {
    p.degree()
}

fn mdeg(m: &PolyMatrix) -> Option<usize> {
    m.degree()
}

impl PdPolyState {
    /// `N_1^{-1} = 1 / n_11`.
    pub fn start(n_weight: &PolyMatrix) -> Result<Self> {
        let n11 = n_weight.entry(0, 0);
        if n11.is_zero() {
            return Err(Error::Singular { stage: Some(1) });
        }
        let n_q = n_weight.degree().unwrap_or(0);
        let (n_bar, n_dbar) = fraction_simplify(&PolyMatrix::identity(1), &n11)?;
        Ok(Self {
            i: 1,
            n_bar,
            n_dbar,
            n_bar_q: 0,
            n_dbar_q: n_q,
            last_step: None,
        })
    }

    pub fn inverse(&self) -> Result<MatrixPolyFraction> {
        MatrixPolyFraction::new(self.n_bar.clone(), self.n_dbar.clone())
    }

    /// Borders `N_{i-1}^{-1}` to `N_i^{-1}` with `i = self.i + 1`.
    pub fn advance(&mut self, n_weight: &PolyMatrix) -> Result<Vec<CapacityCheck>> {
        let i = self.i + 1;
        let mut log = CapacityLog::default();
        let n_q = n_weight.degree().unwrap_or(0);
        let (nb_q, nd_q) = (self.n_bar_q, self.n_dbar_q);
        let part = n_weight.principal_partition(i)?;
        let (l, n_hat) = (&part.l, &part.n_ii);
        let lt = l.transpose();

        let g_bar = self.n_dbar.clone();
        let g_bar_q = nd_q;
        log.record(i, "G_bar", deg(&g_bar), deg(&g_bar), g_bar_q);

        let p_seq = n_hat * &self.n_dbar;
        log.record(i, "p", conv(&[deg(n_hat), deg(&self.n_dbar)]), deg(&p_seq), n_q + nd_q);
        let q_mat = lt.mul(&self.n_bar)?.mul(l)?;
        let q_seq = q_mat.as_scalar().ok_or(Error::Internal("expected a 1x1 product"))?;
        let q_nat = conv(&[mdeg(l), mdeg(&self.n_bar), mdeg(l)]);
        log.record(i, "q", q_nat, deg(&q_seq), 2 * n_q + nb_q);

        let g_dbar = &p_seq - &q_seq;
        let g_dbar_q = (n_q + nd_q).max(2 * n_q + nb_q);
        log.record(i, "G_dbar", sum(&[deg(&p_seq), deg(&q_seq)]), deg(&g_dbar), g_dbar_q);
        if g_dbar.is_zero() {
            return Err(Error::Singular { stage: Some(i) });
        }

        let f_bar = self.n_bar.mul(l)?.neg();
        let f_bar_q = nb_q + n_q;
        log.record(i, "F_bar", conv(&[mdeg(&self.n_bar), mdeg(l)]), mdeg(&f_bar), f_bar_q);
        let f_dbar = g_dbar.clone();
        let f_dbar_q = g_dbar_q;

        let e1 = self.n_bar.mul_poly(&(&g_bar * &f_dbar));
        let e2 = f_bar.mul(&f_bar.transpose())?.mul_poly(&self.n_dbar);
        let e_bar = e1.add(&e2)?;
        let e_bar_q = (nb_q + g_bar_q + f_dbar_q).max(nd_q + 2 * f_bar_q);
        let e_nat = sum(&[
            conv(&[mdeg(&self.n_bar), deg(&g_bar), deg(&f_dbar)]),
            conv(&[deg(&self.n_dbar), mdeg(&f_bar), mdeg(&f_bar)]),
        ]);
        log.record(i, "E_bar", e_nat, mdeg(&e_bar), e_bar_q);
        let e_dbar = &(&self.n_dbar * &g_bar) * &f_dbar;
        let e_dbar_q = nd_q + g_bar_q + f_dbar_q;
        log.record(i, "E_dbar", conv(&[deg(&self.n_dbar), deg(&g_bar), deg(&f_dbar)]), deg(&e_dbar), e_dbar_q);

        // common denominator E̿ F̿ G̿ for all four blocks
        let fg = &f_dbar * &g_dbar;
        let eg = &e_dbar * &g_dbar;
        let tl = e_bar.mul_poly(&fg);
        let tr = f_bar.mul_poly(&eg);
        let br = &(&e_dbar * &f_dbar) * &g_bar;
        let n_bar_new = assemble(&tl, &tr, &br)?;
        let n_bar_cap = (g_dbar_q + f_dbar_q + e_bar_q)
            .max(g_dbar_q + f_bar_q + e_dbar_q)
            .max(g_bar_q + f_dbar_q + e_dbar_q);
        let n_bar_nat = sum(&[
            conv(&[mdeg(&e_bar), deg(&f_dbar), deg(&g_dbar)]),
            conv(&[deg(&e_dbar), mdeg(&f_bar), deg(&g_dbar)]),
            conv(&[deg(&e_dbar), deg(&f_dbar), deg(&g_bar)]),
        ]);
        log.record(i, "N_bar", n_bar_nat, mdeg(&n_bar_new), n_bar_cap);
        let n_dbar_new = &e_dbar * &fg;
        let n_dbar_cap = g_dbar_q + f_dbar_q + e_dbar_q;
        log.record(i, "N_dbar", conv(&[deg(&e_dbar), deg(&f_dbar), deg(&g_dbar)]), deg(&n_dbar_new), n_dbar_cap);

        let (n_bar, n_dbar) = fraction_simplify(&n_bar_new, &n_dbar_new)?;
        *self = Self {
            i,
            n_bar,
            n_dbar,
            n_bar_q: n_bar_cap,
            n_dbar_q: n_dbar_cap,
            last_step: Some(PdStepValues {
                g_bar,
                g_dbar,
                f_bar,
                f_dbar,
                e_bar,
                e_dbar,
                p_seq,
                q_seq,
                bounds: PdBounds {
                    g_bar_q,
                    g_dbar_q,
                    f_bar_q,
                    f_dbar_q,
                    e_bar_q,
                    e_dbar_q,
                },
            }),
        };
        Ok(log.checks)
    }
}

/// `[tl tr; tr^T br]` for a symmetric block layout.
fn assemble(tl: &PolyMatrix, tr: &PolyMatrix, br: &UniPoly) -> Result<PolyMatrix> {
    let k = tl.rows();
    let n = k + 1;
    let (tl, tr) = (tl.entries(), tr.entries());
    let mut entries = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            entries.push(match (r < k, c < k) {
                (true, true) => tl[r * k + c].clone(),
                (true, false) => tr[r].clone(),
                (false, true) => tr[c].clone(),
                (false, false) => br.clone(),
            });
        }
    }
    PolyMatrix::from_entries(n, n, &entries)
}

pub(crate) fn check_square_symmetric(n_weight: &PolyMatrix) -> Result<()> {
    if n_weight.rows() != n_weight.cols() {
        return Err(Error::NotSquare {
            what: "inverted matrix",
            rows: n_weight.rows(),
            cols: n_weight.cols(),
        });
    }
    if !n_weight.is_symmetric() {
        return Err(Error::NotSymmetric { what: "inverted matrix" });
    }
    Ok(())
}

/// Inverse of a symmetric polynomial matrix as `N̄ / N̿`, by bordering on
/// coefficient sequences.
pub fn poly_pd_inverse(n_weight: &PolyMatrix) -> Result<MatrixPolyFraction> {
    poly_pd_inverse_traced(n_weight).map(|(x, _)| x)
}

/// As [`poly_pd_inverse`], also returning the capacity checks of every step.
pub fn poly_pd_inverse_traced(n_weight: &PolyMatrix) -> Result<(MatrixPolyFraction, Vec<CapacityCheck>)> {
    check_square_symmetric(n_weight)?;
    if n_weight.rows() == 0 {
        return Ok((MatrixPolyFraction::new(PolyMatrix::zeros(0, 0), UniPoly::one())?, Vec::new()));
    }
    let mut state = PdPolyState::start(n_weight)?;
    let mut checks = Vec::new();
    while state.i < n_weight.rows() {
        checks.extend(state.advance(n_weight)?);
    }
    Ok((state.inverse()?, checks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::RatFun;
    use crate::matrix::{ff_inverse, RfMatrix};

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(c)
    }

    #[test]
    fn scalar_start() {
        let n = PolyMatrix::from_entries(1, 1, &[up(&[2, 1])]).unwrap();
        let inv = poly_pd_inverse(&n).unwrap();
        assert_eq!(inv.num(), &PolyMatrix::identity(1));
        assert_eq!(inv.den(), &up(&[2, 1]));
    }

    #[test]
    fn identity() {
        let inv = poly_pd_inverse(&PolyMatrix::identity(4)).unwrap();
        assert_eq!(inv.num(), &PolyMatrix::identity(4));
        assert!(inv.den().is_one());
    }

    #[test]
    fn matches_elimination_with_capacities() {
        let p = |c: &[i64]| RatFun::from_poly(up(c));
        let n1 = RfMatrix::from_rows(vec![
            vec![p(&[1, 1]), p(&[0, 1]), p(&[0, 1])],
            vec![p(&[0, 1]), p(&[-1, 1]), p(&[0, 1])],
            vec![p(&[0, 1]), p(&[0, 1]), p(&[1, 1])],
        ])
        .unwrap();
        let (inv, checks) = poly_pd_inverse_traced(&PolyMatrix::from_rf_matrix(&n1).unwrap()).unwrap();
        assert_eq!(inv.to_rf_matrix().unwrap(), ff_inverse(&n1).unwrap());
        assert!(!checks.is_empty());
        assert!(checks.iter().all(CapacityCheck::holds), "{checks:?}");
    }

    #[test]
    fn singular_block() {
        let n = PolyMatrix::from_entries(2, 2, &[up(&[0, 1]), up(&[0, 1]), up(&[0, 1]), up(&[0, 1])]).unwrap();
        assert_eq!(poly_pd_inverse(&n).unwrap_err(), Error::Singular { stage: Some(2) });
    }
}
