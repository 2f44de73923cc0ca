//! Arithmetic in `k[t]` and `k((t))`.
//!
//! The multiplicative absolute value `|x| = |t|^ord_t(x)` is carried
//! additively as [`Valuation`]. Exact elements are [`LaurentPoly`];
//! elements of `k((t))` known only to an absolute precision are
//! [`TruncSeries`]. [`SeriesValue`] lets code accept either.

mod laurent;
mod residue;
mod trunc;
mod value;

use core::fmt;
use core::ops::Add;

pub use laurent::LaurentPoly;
pub use residue::ResidueClass;
pub use trunc::{exp_series, TruncSeries};
pub use value::SeriesValue;

/// `ord_t` with `+∞` for the exact zero. `Finite(_) < Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    /// `self >= bound`, treating `+∞` as above everything.
    pub fn at_least(self, bound: i64) -> bool {
        self >= Valuation::Finite(bound)
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}
