//! Acceptance suite. Each test prints one `criterion N: PASS|FAIL` line to the
//! real standard output, so the lines survive test-harness capture.

use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wmp_cli::{format_matrix, parse_matrix_file, run_command, EXIT_INPUT};
use wmp_core::matrix::ff_inverse;
use wmp_core::poly_path::{poly_pd_inverse, poly_wmp_inverse, PolyMatrix};
use wmp_core::rational_path::{pd_inverse, wmp_inverse};
use wmp_core::verify::{cross_path_check, eval_consistency_check, penrose_check};
use wmp_core::{BigRational, RatFun, RfMatrix, UniPoly, WeightedProblem};

const COEFF: i64 = 3;
const A_DEGREE: usize = 2;
const B_DEGREE: usize = 2;

const LIMIT_WPOLY: Duration = Duration::from_secs(10);
const LIMIT_WRAT: Duration = Duration::from_secs(30);
const LIMIT_WSYM: Duration = Duration::from_secs(30);
const LIMIT_HESS_PER_PATH: Duration = Duration::from_secs(60);
const LIMIT_PENROSE_SUITE: Duration = Duration::from_secs(300);

fn report(criterion: u32, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let line = format!("criterion {criterion}: {verdict} {detail}\n");
    let mut out = std::io::stdout().lock();
    out.write_all(line.as_bytes()).unwrap();
    out.flush().unwrap();
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn load(name: &str) -> RfMatrix {
    parse_matrix_file(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

fn poly(m: &RfMatrix) -> PolyMatrix {
    PolyMatrix::from_rf_matrix(m).unwrap()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn random_poly(rng: &mut ChaCha8Rng, max_degree: usize) -> UniPoly {
    let deg = rng.gen_range(0..=max_degree);
    let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-COEFF..=COEFF)).collect();
    UniPoly::from_i64s(&coeffs)
}

fn random_poly_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, max_degree: usize) -> RfMatrix {
    RfMatrix::from_fn(rows, cols, |_, _| RatFun::from_poly(random_poly(rng, max_degree)))
}

/// `B^T B + I` with a random polynomial `B`.
fn random_weight(rng: &mut ChaCha8Rng, n: usize) -> RfMatrix {
    let b = random_poly_matrix(rng, n, n, B_DEGREE);
    b.transpose().mul(&b).unwrap().add(&RfMatrix::identity(n)).unwrap()
}

/// Case `k` cycles through: plain, a zero column, a duplicated column, both.
fn random_problem(rng: &mut ChaCha8Rng, k: usize) -> (RfMatrix, RfMatrix, RfMatrix) {
    let rows = rng.gen_range(1..=4);
    let cols = rng.gen_range(1..=4);
    let mut a = random_poly_matrix(rng, rows, cols, A_DEGREE);
    if (k % 4 == 2 || k % 4 == 3) && cols >= 2 {
        let src = rng.gen_range(0..cols - 1);
        let dst = rng.gen_range(src + 1..cols);
        for r in 0..rows {
            a.set(r, dst, a.get(r, src).clone());
        }
    }
    if k % 4 == 1 || k % 4 == 3 {
        let z = rng.gen_range(0..cols);
        for r in 0..rows {
            a.set(r, z, RatFun::zero());
        }
    }
    let m = random_weight(rng, rows);
    let n = random_weight(rng, cols);
    (a, m, n)
}

fn golden(
    criterion: u32,
    a: &str,
    m: Option<&str>,
    n: Option<&str>,
    expected: &str,
    limit: Duration,
    poly_path: bool,
) -> bool {
    let a = load(a);
    let m = m.map_or_else(|| RfMatrix::identity(a.rows()), load);
    let n = n.map_or_else(|| RfMatrix::identity(a.cols()), load);
    let expected = load(expected);
    let (x, t) = if poly_path {
        timed(|| poly_wmp_inverse(&poly(&a), &poly(&m), &poly(&n)).unwrap().to_rf_matrix().unwrap())
    } else {
        let problem = WeightedProblem::new(a, m, n).unwrap();
        timed(|| wmp_inverse(&problem).unwrap())
    };
    let pass = x == expected && t < limit;
    report(
        criterion,
        pass,
        &format!("exact match: {}, {:.3}s (limit {}s)", x == expected, t.as_secs_f64(), limit.as_secs()),
    );
    pass
}

#[test]
fn criterion_1_weighted_poly() {
    assert!(golden(1, "wpoly_a.txt", Some("wpoly_m.txt"), Some("wpoly_n.txt"), "wpoly_x.txt", LIMIT_WPOLY, false));
}

#[test]
fn criterion_2_weighted_rational() {
    assert!(golden(2, "wrat_a.txt", Some("wpoly_m.txt"), Some("wpoly_n.txt"), "wrat_x.txt", LIMIT_WRAT, false));
}

#[test]
fn criterion_3_symmetric_weights() {
    assert!(golden(3, "wsym_a.txt", Some("wsym_w.txt"), Some("wsym_w.txt"), "wsym_x.txt", LIMIT_WSYM, true));
}

/// Both paths against the reference Hessenberg inverse as printed. The printed
/// matrix has `(1+s)^2` in four entries; the exact inverse has `1+s^2` there
/// (the printed one fails Penrose equation (1)). The literal comparison is
/// reported as FAIL and asserted in `criterion_4_literal`, which is ignored
/// by default. This test asserts the corrected matrix.
#[test]
fn criterion_4_hessenberg() {
    let a = load("hess_a.txt");
    let printed = load("hess_x_printed.txt");
    let corrected = load("hess_x.txt");
    let problem = WeightedProblem::unweighted(a.clone());
    let (xr, tr) = timed(|| wmp_inverse(&problem).unwrap());
    let id = PolyMatrix::identity(5);
    let (xp, tp) = timed(|| poly_wmp_inverse(&poly(&a), &id, &id).unwrap().to_rf_matrix().unwrap());
    let in_time = tr < LIMIT_HESS_PER_PATH && tp < LIMIT_HESS_PER_PATH;
    let printed_ok = penrose_check(&a, &RfMatrix::identity(5), &RfMatrix::identity(5), &printed).unwrap();
    report(
        4,
        xr == printed && xp == printed && in_time,
        &format!(
            "printed matrix: rational {}, poly {}; printed matrix satisfies Penrose: {}; \
             corrected (1+s^2) matrix: rational {}, poly {}; {:.3}s / {:.3}s (limit {}s per path)",
            xr == printed,
            xp == printed,
            printed_ok.passed(),
            xr == corrected,
            xp == corrected,
            tr.as_secs_f64(),
            tp.as_secs_f64(),
            LIMIT_HESS_PER_PATH.as_secs()
        ),
    );
    assert_eq!(xr, corrected);
    assert_eq!(xp, corrected);
    assert!(!printed_ok.passed());
    assert!(in_time);
}

#[test]
#[ignore = "the reference Hessenberg matrix as printed is not the Moore-Penrose inverse"]
fn criterion_4_literal() {
    let a = load("hess_a.txt");
    let printed = load("hess_x_printed.txt");
    let id = PolyMatrix::identity(5);
    assert_eq!(wmp_inverse(&WeightedProblem::unweighted(a.clone())).unwrap(), printed);
    assert_eq!(poly_wmp_inverse(&poly(&a), &id, &id).unwrap().to_rf_matrix().unwrap(), printed);
}

#[test]
fn criterion_5_penrose_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let start = Instant::now();
    let (mut solved, mut refused, mut failures) = (0, 0, Vec::new());
    for k in 0..200 {
        let (a, m, n) = random_problem(&mut rng, k);
        let problem = WeightedProblem::new(a.clone(), m.clone(), n.clone()).unwrap();
        match wmp_inverse(&problem) {
            Ok(x) => {
                solved += 1;
                let rep = penrose_check(&a, &m, &n, &x).unwrap();
                if !rep.passed() {
                    failures.push(format!("case {k}: {rep}"));
                }
            }
            Err(e) if e.is_singularity() => refused += 1,
            Err(e) => failures.push(format!("case {k}: {e}")),
        }
    }
    let t = start.elapsed();
    let pass = failures.is_empty() && t < LIMIT_PENROSE_SUITE;
    report(
        5,
        pass,
        &format!(
            "200 problems, {solved} solved and verified, {refused} refused as degenerate, {} failures, {:.1}s (limit {}s)",
            failures.len(),
            t.as_secs_f64(),
            LIMIT_PENROSE_SUITE.as_secs()
        ),
    );
    assert!(pass, "{failures:?}");
}

#[test]
fn criterion_6_cross_path() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let start = Instant::now();
    let mut failures = Vec::new();
    for k in 0..100 {
        let (a, m, n) = random_problem(&mut rng, k);
        match cross_path_check(&poly(&a), &poly(&m), &poly(&n)) {
            Ok(true) => {}
            Ok(false) => failures.push(format!("case {k}: paths differ")),
            Err(e) => failures.push(format!("case {k}: {e}")),
        }
    }
    let pass = failures.is_empty();
    report(
        6,
        pass,
        &format!("100 problems, {} disagreements, {:.1}s", failures.len(), start.elapsed().as_secs_f64()),
    );
    assert!(pass, "{failures:?}");
}

#[test]
fn criterion_7_inverse_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let start = Instant::now();
    let mut failures = Vec::new();
    for k in 0..100 {
        let size = rng.gen_range(1..=5);
        let w = random_weight(&mut rng, size);
        let oracle = ff_inverse(&w).unwrap();
        let rational = pd_inverse(&w).unwrap();
        let polynomial = poly_pd_inverse(&poly(&w)).unwrap().to_rf_matrix().unwrap();
        if rational != oracle || polynomial != oracle {
            failures.push(k);
        }
    }
    let pass = failures.is_empty();
    report(
        7,
        pass,
        &format!("100 matrices up to 5x5, mismatches {failures:?}, {:.1}s", start.elapsed().as_secs_f64()),
    );
    assert!(pass);
}

#[test]
fn criterion_8_evaluation_consistency() {
    let points: Vec<BigRational> = [(-3, 1), (-1, 2), (1, 3), (2, 1), (7, 5)]
        .iter()
        .map(|&(p, q)| BigRational::new(p.into(), q.into()))
        .collect();
    let cases = [
        ("wpoly", "wpoly_a.txt", Some("wpoly_m.txt"), Some("wpoly_n.txt")),
        ("wrat", "wrat_a.txt", Some("wpoly_m.txt"), Some("wpoly_n.txt")),
        ("wsym", "wsym_a.txt", Some("wsym_w.txt"), Some("wsym_w.txt")),
        ("hess", "hess_a.txt", None, None),
    ];
    let mut pass = true;
    let mut details = Vec::new();
    for (name, a, m, n) in cases {
        let a = load(a);
        let m = m.map_or_else(|| RfMatrix::identity(a.rows()), load);
        let n = n.map_or_else(|| RfMatrix::identity(a.cols()), load);
        let x = wmp_inverse(&WeightedProblem::new(a.clone(), m.clone(), n.clone()).unwrap()).unwrap();
        let rep = eval_consistency_check(&a, &m, &n, &x, &points);
        pass &= rep.passed() && rep.passes() > 0;
        details.push(format!("{name}: {} pass, {} skipped", rep.passes(), rep.skips()));
    }
    report(8, pass, &format!("5 points per fixture; {}", details.join("; ")));
    assert!(pass);
}

fn random_ratfun(rng: &mut ChaCha8Rng) -> RatFun {
    let num = random_poly(rng, 3);
    let mut den = random_poly(rng, 3);
    while den.is_zero() {
        den = random_poly(rng, 3);
    }
    RatFun::new(num, den).unwrap()
}

#[test]
fn criterion_9_parser() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut round_trip_failures = 0;
    for _ in 0..200 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=4);
        let a = RfMatrix::from_fn(rows, cols, |_, _| random_ratfun(&mut rng));
        if parse_matrix_file(&format_matrix(&a)).as_ref() != Ok(&a) {
            round_trip_failures += 1;
        }
    }

    let dir = tempfile::tempdir().unwrap();
    let error_cases = [
        ("trailing operator", "matrix 1 1\ns+\n", "line 2: row 1, column 1: syntax error at offset 2"),
        ("non-constant exponent", "matrix 1 1\ns^s\n", "line 2: row 1, column 1: syntax error at offset 2: exponent"),
        ("short row", "matrix 1 3\n1; s\n", "line 2: row 1: expected 3 entries, found 2"),
    ];
    let mut error_failures = Vec::new();
    for (name, text, diagnostic) in error_cases {
        let path = dir.path().join("a.txt");
        std::fs::write(&path, text).unwrap();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_command(["wmp", "compute", "--a", path.to_str().unwrap()], &mut out, &mut err);
        let err = String::from_utf8(err).unwrap();
        if code != EXIT_INPUT || !err.contains(diagnostic) {
            error_failures.push(format!("{name}: exit {code}, {err:?}"));
        }
    }
    let pass = round_trip_failures == 0 && error_failures.is_empty();
    report(
        9,
        pass,
        &format!("200 round trips, {round_trip_failures} failures; grammar error cases exiting 2 with position: {}/3", 3 - error_failures.len()),
    );
    assert!(pass, "{error_failures:?}");
}
