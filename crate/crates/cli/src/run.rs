use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use wmp_core::poly_path::{poly_pd_inverse, poly_wmp_inverse, PolyMatrix};
use wmp_core::rational_path::{pd_inverse, wmp_inverse};
use wmp_core::verify::{penrose_check, PenroseReport};
use wmp_core::{BigRational, Error, RfMatrix, WeightedProblem};

use crate::{format_matrix, parse_matrix_file};

pub const EXIT_OK: i32 = 0;
/// Penrose verification or cross-path comparison failed.
pub const EXIT_FAILED_CHECK: i32 = 1;
/// Unreadable file, parse error, bad shape, or a pole during evaluation.
pub const EXIT_INPUT: i32 = 2;
/// Singular matrix or degenerate weight.
pub const EXIT_SINGULAR: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "wmp", version, about = "Weighted Moore-Penrose inverses of rational-function matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ComputePath {
    Rational,
    Poly,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InvertPath {
    Rational,
    Poly,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the weighted Moore-Penrose inverse of A.
    Compute {
        #[arg(long)]
        a: PathBuf,
        /// Row weight; identity when omitted.
        #[arg(long)]
        m: Option<PathBuf>,
        /// Column weight; identity when omitted.
        #[arg(long)]
        n: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "rational")]
        path: ComputePath,
        /// Write the result here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Check the four Penrose equations on the result.
        #[arg(long)]
        verify: bool,
    },
    /// Invert a symmetric matrix.
    Invert {
        #[arg(long)]
        n: PathBuf,
        #[arg(long, value_enum, default_value = "rational")]
        path: InvertPath,
    },
    /// Check whether X is the weighted Moore-Penrose inverse of A.
    Verify {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        m: Option<PathBuf>,
        #[arg(long)]
        n: Option<PathBuf>,
        #[arg(long)]
        x: PathBuf,
    },
    /// Evaluate a matrix at a rational point.
    Eval {
        #[arg(long = "in")]
        input: PathBuf,
        /// The point, written `p/q` or `p`.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
}

struct Failure {
    code: i32,
    messages: Vec<String>,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            messages: vec![message.into()],
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            _ if e.is_singularity() => EXIT_SINGULAR,
            Error::Internal(_) => EXIT_FAILED_CHECK,
            _ => EXIT_INPUT,
        };
        Failure::new(code, e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `args` (program name first) and runs the subcommand. Results go to
/// `out`, one diagnostic line per failure goes to `err`. Returns the exit
/// status.
pub fn run_command<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            for m in &f.messages {
                let _ = writeln!(err, "error: {m}");
            }
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Compute {
            a,
            m,
            n,
            path,
            out: target,
            verify,
        } => compute(&a, m.as_deref(), n.as_deref(), path, target.as_deref(), verify, out),
        Command::Invert { n, path } => invert(&n, path, out),
        Command::Verify { a, m, n, x } => {
            let (a, m, n) = load_problem(&a, m.as_deref(), n.as_deref())?;
            let x = load(&x)?;
            let report = penrose_check(&a, &m, &n, &x)?;
            check_report(&report)?;
            emit(out, None, &format!("{report}\n"))
        }
        Command::Eval { input, at } => {
            let a = load(&input)?;
            let point = parse_point(&at)?;
            let value = a.eval(&point)?;
            emit(out, None, &format_matrix(&RfMatrix::from_qmatrix(&value)))
        }
    }
}

fn compute(
    a: &Path,
    m: Option<&Path>,
    n: Option<&Path>,
    path: ComputePath,
    target: Option<&Path>,
    verify: bool,
    out: &mut dyn Write,
) -> Outcome {
    let (a, m, n) = load_problem(a, m, n)?;
    let problem = WeightedProblem::new(a.clone(), m.clone(), n.clone())?;
    let x = match path {
        ComputePath::Rational => wmp_inverse(&problem)?,
        ComputePath::Poly => poly_compute(&a, &m, &n)?,
        ComputePath::Both => {
            let rational = wmp_inverse(&problem)?;
            let poly = poly_compute(&a, &m, &n)?;
            if let Some((r, c)) = first_difference(&rational, &poly) {
                return Err(Failure::new(
                    EXIT_FAILED_CHECK,
                    format!(
                        "paths disagree at ({r}, {c}): rational {} vs polynomial {}",
                        rational.get(r - 1, c - 1),
                        poly.get(r - 1, c - 1)
                    ),
                ));
            }
            rational
        }
    };
    emit(out, target, &format_matrix(&x))?;
    if verify {
        check_report(&penrose_check(&a, &m, &n, &x)?)?;
    }
    Ok(())
}

fn invert(n: &Path, path: InvertPath, out: &mut dyn Write) -> Outcome {
    let n = load(n)?;
    let inv = match path {
        InvertPath::Rational => pd_inverse(&n)?,
        InvertPath::Poly => poly_pd_inverse(&PolyMatrix::from_rf_matrix(&n)?)?.to_rf_matrix()?,
    };
    emit(out, None, &format_matrix(&inv))
}

fn poly_compute(a: &RfMatrix, m: &RfMatrix, n: &RfMatrix) -> Result<RfMatrix, Error> {
    let x = poly_wmp_inverse(
        &PolyMatrix::from_rf_matrix(a)?,
        &PolyMatrix::from_rf_matrix(m)?,
        &PolyMatrix::from_rf_matrix(n)?,
    )?;
    x.to_rf_matrix()
}

fn first_difference(x: &RfMatrix, y: &RfMatrix) -> Option<(usize, usize)> {
    let cols = x.cols();
    x.entries()
        .iter()
        .zip(y.entries())
        .position(|(p, q)| p != q)
        .map(|k| (k / cols + 1, k % cols + 1))
}

fn check_report(report: &PenroseReport) -> Outcome {
    let Some(first) = &report.first_failure else {
        return Ok(());
    };
    let mut messages = vec![format!(
        "equation {} fails at ({}, {}) with residual {}",
        first.equation, first.row, first.col, first.residual
    )];
    messages.extend(
        report
            .failed_equations()
            .into_iter()
            .filter(|e| *e != first.equation)
            .map(|e| format!("equation {e} fails")),
    );
    Err(Failure {
        code: EXIT_FAILED_CHECK,
        messages,
    })
}

fn load(path: &Path) -> Result<RfMatrix, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_INPUT, format!("cannot read {}: {e}", path.display())))?;
    parse_matrix_file(&text).map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn load_problem(a: &Path, m: Option<&Path>, n: Option<&Path>) -> Result<(RfMatrix, RfMatrix, RfMatrix), Failure> {
    let a = load(a)?;
    let m = m.map_or_else(|| Ok(RfMatrix::identity(a.rows())), load)?;
    let n = n.map_or_else(|| Ok(RfMatrix::identity(a.cols())), load)?;
    Ok((a, m, n))
}

fn parse_point(text: &str) -> Result<BigRational, Failure> {
    let bad = || Failure::new(EXIT_INPUT, format!("invalid point {text:?}: expected p/q with integers p, q and q nonzero"));
    let cleaned = text.trim().replace('\u{2212}', "-");
    let (p, q) = cleaned.split_once('/').unwrap_or((&cleaned, "1"));
    let p = p.trim().parse().map_err(|_| bad())?;
    let q: num_bigint::BigInt = q.trim().parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

fn emit(out: &mut dyn Write, target: Option<&Path>, text: &str) -> Outcome {
    match target {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::new(EXIT_INPUT, format!("cannot write {}: {e}", path.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::new(EXIT_INPUT, format!("cannot write output: {e}"))),
    }
}
