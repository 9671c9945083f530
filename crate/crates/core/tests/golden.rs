//! Worked reference problems, checked on both computation paths.

use wmp_core::matrix::{ff_inverse, generic_rank};
use wmp_core::poly_path::{poly_pd_inverse, poly_wmp_inverse_traced, PolyMatrix};
use wmp_core::rational_path::{pd_inverse, wmp_inverse, wmp_inverse_traced, Branch};
use wmp_core::verify::{cross_path_check, eval_consistency_check, penrose_check};
use wmp_core::{BigRational, RatFun, RfMatrix, UniPoly, WeightedProblem};

fn up(c: &[i64]) -> UniPoly {
    UniPoly::from_i64s(c)
}

fn p(c: &[i64]) -> RatFun {
    RatFun::from_poly(up(c))
}

fn frac(num: &UniPoly, den: &UniPoly) -> RatFun {
    RatFun::new(num.clone(), den.clone()).unwrap()
}

fn rows(r: Vec<Vec<RatFun>>) -> RfMatrix {
    RfMatrix::from_rows(r).unwrap()
}

fn shared_weights() -> (RfMatrix, RfMatrix) {
    let m1 = rows(vec![
        vec![p(&[1, 1]), p(&[0, 1]), p(&[1, 1])],
        vec![p(&[0, 1]), p(&[2, 1]), p(&[0, 1])],
        vec![p(&[1, 1]), p(&[0, 1]), p(&[3, 1])],
    ]);
    let n1 = rows(vec![
        vec![p(&[1, 1]), p(&[1, 1]), p(&[1, 1])],
        vec![p(&[1, 1]), p(&[2, 1]), p(&[0, 1])],
        vec![p(&[1, 1]), p(&[0, 1]), p(&[3, 1])],
    ]);
    (m1, n1)
}

fn weighted_poly() -> WeightedProblem {
    let x = rows(vec![
        vec![p(&[1, 1]), p(&[2, 1]), p(&[0, 1])],
        vec![p(&[0, 1]), p(&[0, 1]), p(&[1, 1])],
        vec![p(&[1, 1]), p(&[2, 1]), p(&[0, 1])],
    ]);
    let (m1, n1) = shared_weights();
    WeightedProblem::new(x, m1, n1).unwrap()
}

fn expected_weighted_poly() -> RfMatrix {
    let seven = up(&[6, 7]);
    let e = up(&[2, 3, 2]);
    let d = &seven * &e;
    assert_eq!(d, up(&[12, 32, 33, 14]));
    let s = up(&[0, 1]);
    let s2 = up(&[0, 0, 1]);
    rows(vec![
        vec![
            frac(&(&s2 * &up(&[4, 2])), &d),
            frac(&-(&up(&[2, 1]) * &up(&[2, 1])), &e),
            frac(&(&s * &up(&[12, 16, 5])), &d),
        ],
        vec![frac(&up(&[2, 5, 2]), &d), frac(&up(&[2, 2]), &e), frac(&up(&[4, 2, -2]), &d)],
        vec![
            frac(&-(&s2 * &up(&[2, 2])), &d),
            frac(&(&up(&[1, 1]) * &up(&[2, 1])), &e),
            frac(&-(&(&s * &up(&[1, 1])) * &up(&[6, 5])), &d),
        ],
    ])
}

fn weighted_rational() -> WeightedProblem {
    let x = rows(vec![
        vec![frac(&up(&[1]), &up(&[0, 0, 1])), p(&[0, 1]), frac(&up(&[1, 1]), &up(&[0, 0, 0, 1]))],
        vec![p(&[0, 1]), p(&[-1, 0, 1]), p(&[0, 1])],
        vec![p(&[1, 1]), frac(&up(&[1]), &up(&[0, 1])), p(&[1, 1])],
    ]);
    let (m1, n1) = shared_weights();
    WeightedProblem::new(x, m1, n1).unwrap()
}

fn expected_weighted_rational() -> RfMatrix {
    let f = up(&[-2, -1, 1, 1]);
    let sf = &up(&[0, 1]) * &f;
    rows(vec![
        vec![p(&[0, 0, 0, -1]), frac(&up(&[-1, -1, 0, 0, 0, 1, 1]), &sf), frac(&up(&[-1, -1, 1, 1, 0, -1]), &f)],
        vec![p(&[]), frac(&up(&[1, 1]), &f), frac(&up(&[0, 1]), &up(&[2, 1, -1, -1]))],
        vec![p(&[0, 0, 0, 1]), frac(&up(&[1, 0, 0, 0, -1, -1]), &f), frac(&up(&[0, 1, 0, -1, 0, 1]), &f)],
    ])
}

fn symmetric_weights() -> WeightedProblem {
    let x = rows(vec![
        vec![p(&[1, 1]), p(&[-2, 0, 0, 0, 1]), p(&[0, 1])],
        vec![p(&[0, 1]), p(&[-1, 1]), p(&[0, 1])],
        vec![p(&[0, 1]), p(&[0, 1]), p(&[1, 1])],
    ]);
    let w = rows(vec![
        vec![p(&[1, 1]), p(&[0, 1]), p(&[0, 1])],
        vec![p(&[0, 1]), p(&[-1, 1]), p(&[0, 1])],
        vec![p(&[0, 1]), p(&[0, 1]), p(&[1, 1])],
    ]);
    WeightedProblem::new(x, w.clone(), w).unwrap()
}

fn expected_symmetric_weights() -> RfMatrix {
    let pp = up(&[1, -1, -1, 0, 0, 1]);
    let neg = -pp.clone();
    rows(vec![
        vec![frac(&up(&[1]), &pp), frac(&up(&[2, 2, 1, 0, -1, -1]), &neg), frac(&up(&[0, 1, 1, 0, 0, -1]), &pp)],
        vec![frac(&up(&[0, 1]), &pp), frac(&up(&[1, 2]), &neg), frac(&up(&[0, 1]), &pp)],
        vec![frac(&up(&[0, 1]), &neg), frac(&up(&[0, 3, 1, 0, 0, -1]), &pp), frac(&up(&[-1, 2, 1, 0, 0, -1]), &neg)],
    ])
}

fn hessenberg() -> RfMatrix {
    RfMatrix::from_fn(5, 5, |r, c| {
        if c > r + 1 {
            RatFun::zero()
        } else {
            RatFun::s().pow((r + 1 - c) as u32)
        }
    })
}

/// The true Moore-Penrose inverse of the Hessenberg example. The printed
/// version has `(1+s)^2` where `1+s^2` belongs.
fn expected_hessenberg() -> RfMatrix {
    let q = up(&[1, 0, 1]);
    let z = RatFun::zero;
    rows(vec![
        vec![frac(&up(&[0, 1]), &q), z(), z(), z(), z()],
        vec![frac(&up(&[1]), &q), z(), z(), z(), z()],
        vec![p(&[0, -1]), p(&[1]), z(), z(), z()],
        vec![z(), p(&[0, -1]), p(&[1]), z(), z()],
        vec![z(), z(), p(&[0, -1]), frac(&up(&[1]), &q), frac(&up(&[0, 1]), &q)],
    ])
}

fn poly_parts(problem: &WeightedProblem) -> (PolyMatrix, PolyMatrix, PolyMatrix) {
    (
        PolyMatrix::from_rf_matrix(problem.a()).unwrap(),
        PolyMatrix::from_rf_matrix(problem.m_weight()).unwrap(),
        PolyMatrix::from_rf_matrix(problem.n_weight()).unwrap(),
    )
}

fn assert_penrose(problem: &WeightedProblem, x: &RfMatrix) {
    let report = penrose_check(problem.a(), problem.m_weight(), problem.n_weight(), x).unwrap();
    assert!(report.passed(), "{report}");
}

#[test]
fn weighted_poly_rational_path() {
    let problem = weighted_poly();
    let x = wmp_inverse(&problem).unwrap();
    assert_eq!(x, expected_weighted_poly());
    assert_penrose(&problem, &x);
}

#[test]
fn weighted_poly_polynomial_path_and_capacities() {
    let problem = weighted_poly();
    let (a, m, n) = poly_parts(&problem);
    let (x, trace) = poly_wmp_inverse_traced(&a, &m, &n).unwrap();
    assert_eq!(x.to_rf_matrix().unwrap(), expected_weighted_poly());
    for stage in &trace {
        for check in &stage.checks {
            assert!(check.holds(), "{check}");
        }
    }
}

#[test]
fn weighted_rational_rational_path() {
    let problem = weighted_rational();
    let x = wmp_inverse(&problem).unwrap();
    assert_eq!(x.get(0, 0), &p(&[0, 0, 0, -1]));
    assert_eq!(x, expected_weighted_rational());
    assert_penrose(&problem, &x);
}

#[test]
fn weighted_rational_is_rejected_by_polynomial_path() {
    assert!(PolyMatrix::from_rf_matrix(weighted_rational().a()).is_err());
}

#[test]
fn symmetric_weights_both_paths() {
    let problem = symmetric_weights();
    let (a, m, n) = poly_parts(&problem);
    let (x, trace) = poly_wmp_inverse_traced(&a, &m, &n).unwrap();
    let x = x.to_rf_matrix().unwrap();
    assert_eq!(x, expected_symmetric_weights());
    assert_eq!(x.get(1, 1), &frac(&up(&[1, 2]), &up(&[-1, 1, 1, 0, 0, -1])));
    assert_eq!(wmp_inverse(&problem).unwrap(), x);
    assert!(trace.iter().flat_map(|t| &t.checks).all(|c| c.holds()));
    // A is invertible here, so the weights drop out
    assert_eq!(x, ff_inverse(problem.a()).unwrap());
}

#[test]
fn hessenberg_both_paths() {
    let problem = WeightedProblem::unweighted(hessenberg());
    assert_eq!(generic_rank(problem.a()), 4);
    let x = wmp_inverse(&problem).unwrap();
    assert_eq!(x, expected_hessenberg());
    assert_penrose(&problem, &x);
    let (a, m, n) = poly_parts(&problem);
    let (xp, trace) = poly_wmp_inverse_traced(&a, &m, &n).unwrap();
    assert_eq!(xp.to_rf_matrix().unwrap(), x);
    assert!(trace.iter().flat_map(|t| &t.checks).all(|c| c.holds()));
    assert!(cross_path_check(&a, &m, &n).unwrap());
}

#[test]
fn stage_results_solve_their_subproblems() {
    for problem in [weighted_poly(), weighted_rational(), symmetric_weights(), WeightedProblem::unweighted(hessenberg())] {
        let (_, trace) = wmp_inverse_traced(&problem).unwrap();
        for stage in &trace {
            let i = stage.stage;
            let a_i = problem.a().leading_columns(i).unwrap();
            let n_i = problem.n_weight().submatrix(0, i, 0, i);
            let report = penrose_check(&a_i, problem.m_weight(), &n_i, &stage.x).unwrap();
            assert!(report.passed(), "stage {i}: {report}");
        }
    }
}

#[test]
fn branches_agree_between_paths() {
    for problem in [weighted_poly(), symmetric_weights(), WeightedProblem::unweighted(hessenberg())] {
        let (_, rational) = wmp_inverse_traced(&problem).unwrap();
        let (a, m, n) = poly_parts(&problem);
        let (_, poly) = poly_wmp_inverse_traced(&a, &m, &n).unwrap();
        let rb: Vec<_> = rational.iter().map(|t| t.branch).collect();
        let pb: Vec<_> = poly.iter().map(|t| t.branch).collect();
        assert_eq!(rb, pb);
        for (r, p) in rational.iter().zip(&poly) {
            assert_eq!(r.x, p.x.to_rf_matrix().unwrap(), "stage {}", r.stage);
        }
    }
    // the Hessenberg matrix has a dependent column, so the c = 0 branch runs
    let (_, trace) = wmp_inverse_traced(&WeightedProblem::unweighted(hessenberg())).unwrap();
    assert!(trace.iter().any(|t| t.branch == Some(Branch::ZeroC)));
}

#[test]
fn weight_inverses_agree() {
    let (m1, n1) = shared_weights();
    for w in [m1, n1, symmetric_weights().n_weight().clone()] {
        let oracle = ff_inverse(&w).unwrap();
        assert_eq!(pd_inverse(&w).unwrap(), oracle);
        let poly = poly_pd_inverse(&PolyMatrix::from_rf_matrix(&w).unwrap()).unwrap();
        assert_eq!(poly.to_rf_matrix().unwrap(), oracle);
        assert_eq!(oracle.mul(&w).unwrap(), RfMatrix::identity(3));
    }
}

#[test]
fn pointwise_evaluation_agrees() {
    let points: Vec<BigRational> = [(1, 1), (2, 1), (-1, 2), (3, 7), (0, 1)]
        .iter()
        .map(|&(n, d)| BigRational::new(n.into(), d.into()))
        .collect();
    for problem in [weighted_poly(), weighted_rational(), symmetric_weights(), WeightedProblem::unweighted(hessenberg())] {
        let x = wmp_inverse(&problem).unwrap();
        let report = eval_consistency_check(problem.a(), problem.m_weight(), problem.n_weight(), &x, &points);
        assert!(report.passed(), "{report:?}");
        assert!(report.passes() >= 3, "{report:?}");
    }
}
