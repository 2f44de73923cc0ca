use alloc::string::String;
use core::fmt;

/// Every failure the algebra layer can report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// All known coefficients of a truncated series vanish.
    IndeterminateValuation {
        prec: i64,
    },
    NegativeValuation {
        ord: i64,
    },
    InsufficientPrecision {
        needed: i64,
        available: i64,
    },
    /// Argument outside the domain of a partial function (e.g. `exp` off `t·k[[t]]`).
    Domain(String),
    ZeroScale,
    ArityMismatch {
        expected: usize,
        found: usize,
    },
    InvalidArity(usize),
    ZeroPolynomial,
    /// Buchberger exceeded its pair-reduction budget.
    BudgetExceeded {
        budget: usize,
    },
    NotGroebner,
    NotHomogeneous,
    NonPolynomialRange {
        r: u64,
    },
    ZeroHilbert {
        r: u64,
    },
    NotSquare {
        rows: usize,
        cols: usize,
    },
    EmptyInput,
    FullRank,
    Inconclusive(String),
    UnsupportedMap(String),
    PrecisionGap {
        degree: i64,
        s: i64,
    },
    Precondition(String),
    DivisionByZero,
    Overflow,
    Parse {
        pos: usize,
        msg: String,
    },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::IndeterminateValuation { prec } => {
                write!(
                    f,
                    "valuation undetermined: series vanishes to precision {prec}"
                )
            }
            Error::NegativeValuation { ord } => write!(f, "negative valuation {ord}"),
            Error::InsufficientPrecision { needed, available } => {
                write!(f, "insufficient precision: need {needed}, have {available}")
            }
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::ZeroScale => f.write_str("scaling factor must be nonzero"),
            Error::ArityMismatch { expected, found } => {
                write!(f, "arity mismatch: expected {expected}, found {found}")
            }
            Error::InvalidArity(m) => write!(f, "invalid arity {m}"),
            Error::ZeroPolynomial => f.write_str("operation undefined on the zero polynomial"),
            Error::BudgetExceeded { budget } => {
                write!(f, "pair-reduction budget of {budget} exceeded")
            }
            Error::NotGroebner => f.write_str("basis is not a Groebner basis"),
            Error::NotHomogeneous => f.write_str("ideal is not homogeneous"),
            Error::NonPolynomialRange { r } => {
                write!(
                    f,
                    "Hilbert function is not linear on the window (breaks at r = {r})"
                )
            }
            Error::ZeroHilbert { r } => write!(f, "Hilbert function vanishes at r = {r}"),
            Error::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            Error::EmptyInput => f.write_str("empty input"),
            Error::FullRank => f.write_str("matrix has full column rank; no kernel"),
            Error::Inconclusive(msg) => write!(f, "inconclusive: {msg}"),
            Error::UnsupportedMap(msg) => write!(f, "unsupported witness map: {msg}"),
            Error::PrecisionGap { degree, s } => {
                write!(f, "t-degree {degree} is not below the height bound s = {s}")
            }
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::Overflow => f.write_str("integer overflow"),
            Error::Parse { pos, msg } => write!(f, "parse error at {pos}: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
