use std::fmt;

/// Errors raised by the exact arithmetic and the inversion algorithms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A fraction was constructed with the zero polynomial as denominator.
    ZeroDenominator,
    /// `gcd(0, 0)` was requested.
    UndefinedGcd,
    /// Division by the zero polynomial or the zero rational function.
    DivisionByZero,
    /// A denominator vanishes at the evaluation point.
    Pole {
        /// 1-based matrix position of the offending entry, if any.
        position: Option<(usize, usize)>,
        point: String,
    },
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    /// 1-based index outside `1..=bound` (or `2..=bound` for partitions).
    IndexOutOfRange { index: usize, bound: usize },
    NotSquare {
        what: &'static str,
        rows: usize,
        cols: usize,
    },
    NotSymmetric { what: &'static str },
    /// A matrix (or leading principal block) is singular over the
    /// rational-function field.
    Singular { stage: Option<usize> },
    /// A quantity whose inverse the recursion needs is identically zero.
    DegenerateWeight {
        stage: usize,
        quantity: &'static str,
    },
    /// A rational entry was found where a polynomial was required.
    NotPolynomial { row: usize, col: usize },
    /// A broken precondition detected inside an algorithm.
    Internal(&'static str),
}

impl Error {
    /// True for the singular / degenerate-weight family of failures.
    pub fn is_singularity(&self) -> bool {
        matches!(
            self,
            Error::Singular { .. } | Error::DegenerateWeight { .. } | Error::DivisionByZero
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroDenominator => write!(f, "zero denominator"),
            Error::UndefinedGcd => write!(f, "gcd of two zero polynomials is undefined"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::Pole {
                position: Some((r, c)),
                point,
            } => write!(f, "entry ({r}, {c}) has a pole at s = {point}"),
            Error::Pole {
                position: None,
                point,
            } => write!(f, "pole at s = {point}"),
            Error::DimensionMismatch { op, left, right } => write!(
                f,
                "dimension mismatch in {op}: {}x{} vs {}x{}",
                left.0, left.1, right.0, right.1
            ),
            Error::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range (bound {bound})")
            }
            Error::NotSquare { what, rows, cols } => {
                write!(f, "{what} must be square, got {rows}x{cols}")
            }
            Error::NotSymmetric { what } => write!(f, "{what} is not symmetric"),
            Error::Singular { stage: Some(i) } => {
                write!(f, "leading principal submatrix of order {i} is singular")
            }
            Error::Singular { stage: None } => write!(f, "matrix is singular"),
            Error::DegenerateWeight { stage, quantity } => {
                write!(f, "degenerate weight at stage {stage}: {quantity} is identically zero")
            }
            Error::NotPolynomial { row, col } => {
                write!(f, "entry ({row}, {col}) is not a polynomial")
            }
            Error::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
