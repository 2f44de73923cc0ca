use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::Result;
use crate::scalar::Scalar;

use super::{LaurentPoly, TruncSeries, Valuation};

/// Either an exact element of `k[t, 1/t]` or a truncated element of `k((t))`.
///
/// Mixed arithmetic keeps the truncated operand's precision and uses the
/// exact operand's valuation, which is the best provable bound.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SeriesValue {
    Exact(LaurentPoly),
    Approx(TruncSeries),
}

impl SeriesValue {
    pub fn exact(p: LaurentPoly) -> Self {
        SeriesValue::Exact(p)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, SeriesValue::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&LaurentPoly> {
        match self {
            SeriesValue::Exact(p) => Some(p),
            SeriesValue::Approx(_) => None,
        }
    }

    /// Exact zero is `Infinite`; a series that vanishes to its precision
    /// reports `IndeterminateValuation`.
    pub fn ord_t(&self) -> Result<Valuation> {
        match self {
            SeriesValue::Exact(p) => Ok(p.ord_t()),
            SeriesValue::Approx(s) => s.ord_t().map(Valuation::Finite),
        }
    }

    pub fn valuation_floor(&self) -> Valuation {
        match self {
            SeriesValue::Exact(p) => p.ord_t(),
            SeriesValue::Approx(s) => Valuation::Finite(s.valuation_floor()),
        }
    }

    pub fn to_series(&self, prec: i64) -> TruncSeries {
        match self {
            SeriesValue::Exact(p) => TruncSeries::from_poly(p, prec),
            SeriesValue::Approx(s) => s.with_prec(prec),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        match self {
            SeriesValue::Exact(p) => SeriesValue::Exact(p.scale(c)),
            SeriesValue::Approx(s) => SeriesValue::Approx(s.scale(c)),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        match self {
            SeriesValue::Exact(p) => SeriesValue::Exact(p.pow(exp)),
            SeriesValue::Approx(s) => SeriesValue::Approx(s.pow(exp)),
        }
    }

    pub fn coeff_scale(&self, lambda: &Scalar) -> Result<Self> {
        Ok(match self {
            SeriesValue::Exact(p) => SeriesValue::Exact(p.coeff_scale(lambda)?),
            SeriesValue::Approx(s) => SeriesValue::Approx(s.coeff_scale(lambda)?),
        })
    }
}

impl From<LaurentPoly> for SeriesValue {
    fn from(p: LaurentPoly) -> Self {
        SeriesValue::Exact(p)
    }
}

impl From<TruncSeries> for SeriesValue {
    fn from(s: TruncSeries) -> Self {
        SeriesValue::Approx(s)
    }
}

impl Add for &SeriesValue {
    type Output = SeriesValue;
    fn add(self, rhs: &SeriesValue) -> SeriesValue {
        use SeriesValue::*;
        match (self, rhs) {
            (Exact(a), Exact(b)) => Exact(a + b),
            (Approx(a), Approx(b)) => Approx(a + b),
            (Exact(a), Approx(b)) | (Approx(b), Exact(a)) => Approx(b.add_exact(a)),
        }
    }
}

impl Neg for &SeriesValue {
    type Output = SeriesValue;
    fn neg(self) -> SeriesValue {
        match self {
            SeriesValue::Exact(a) => SeriesValue::Exact(-a),
            SeriesValue::Approx(a) => SeriesValue::Approx(-a),
        }
    }
}

impl Sub for &SeriesValue {
    type Output = SeriesValue;
    fn sub(self, rhs: &SeriesValue) -> SeriesValue {
        self + &(-rhs)
    }
}

impl Mul for &SeriesValue {
    type Output = SeriesValue;
    fn mul(self, rhs: &SeriesValue) -> SeriesValue {
        use SeriesValue::*;
        match (self, rhs) {
            (Exact(a), Exact(b)) => Exact(a * b),
            (Approx(a), Approx(b)) => Approx(a * b),
            (Exact(a), Approx(b)) | (Approx(b), Exact(a)) => Approx(b.mul_exact(a)),
        }
    }
}

impl fmt::Display for SeriesValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesValue::Exact(p) => fmt::Display::fmt(p, f),
            SeriesValue::Approx(s) => fmt::Display::fmt(s, f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_ops_keep_truncated_precision() {
        let exact = SeriesValue::from("1 + t".parse::<LaurentPoly>().unwrap());
        let approx = SeriesValue::from(TruncSeries::from_poly(&"t".parse().unwrap(), 3));
        let sum = &exact + &approx;
        assert_eq!(
            sum.to_series(3),
            TruncSeries::from_poly(&"1 + 2*t".parse().unwrap(), 3)
        );
        let prod = &exact * &approx;
        match prod {
            SeriesValue::Approx(s) => assert_eq!(s.prec(), 3),
            _ => panic!("expected truncated product"),
        }
        assert_eq!(
            SeriesValue::from(LaurentPoly::zero()).ord_t(),
            Ok(Valuation::Infinite)
        );
    }
}
