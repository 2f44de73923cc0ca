use alloc::collections::BTreeMap;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{LaurentPoly, Valuation};

/// Element of `k((t))` known modulo `t^prec`.
///
/// Coefficients of degree `>= prec` are unknown. Every operation returns
/// the largest precision it can prove rather than failing.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    // invariant: every key < prec, no zero values
    coeffs: BTreeMap<i64, Scalar>,
    prec: i64,
}

impl TruncSeries {
    /// `O(t^prec)`: nothing known except that the valuation is at least `prec`.
    pub fn zero(prec: i64) -> Self {
        TruncSeries {
            coeffs: BTreeMap::new(),
            prec,
        }
    }

    pub fn one(prec: i64) -> Self {
        TruncSeries::from_poly(&LaurentPoly::one(), prec)
    }

    /// Reduces an exact element to absolute precision `prec`.
    pub fn from_poly(p: &LaurentPoly, prec: i64) -> Self {
        let coeffs = p
            .terms()
            .take_while(|&(k, _)| k < prec)
            .map(|(k, c)| (k, c.clone()))
            .collect();
        TruncSeries { coeffs, prec }
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// The known part as an exact polynomial.
    pub fn known_part(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.coeffs.iter().map(|(&k, c)| (k, c.clone())))
    }

    pub fn coeff(&self, degree: i64) -> Option<Scalar> {
        (degree < self.prec).then(|| self.coeffs.get(&degree).cloned().unwrap_or_default())
    }

    /// True when no coefficient below the precision is nonzero.
    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn ord_t(&self) -> Result<i64> {
        self.coeffs
            .keys()
            .next()
            .copied()
            .ok_or(Error::IndeterminateValuation { prec: self.prec })
    }

    /// Proven lower bound on the valuation: `ord_t` if determined, else `prec`.
    pub fn valuation_floor(&self) -> i64 {
        self.coeffs.keys().next().copied().unwrap_or(self.prec)
    }

    pub fn with_prec(&self, prec: i64) -> Self {
        let prec = prec.min(self.prec);
        let coeffs = self
            .coeffs
            .range(..prec)
            .map(|(&k, c)| (k, c.clone()))
            .collect();
        TruncSeries { coeffs, prec }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return TruncSeries::zero(self.prec);
        }
        let coeffs = self.coeffs.iter().map(|(&k, v)| (k, v * c)).collect();
        TruncSeries {
            coeffs,
            prec: self.prec,
        }
    }

    pub fn shift(&self, k: i64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&d, v)| (d + k, v.clone()))
            .collect();
        TruncSeries {
            coeffs,
            prec: self.prec + k,
        }
    }

    /// Product with an exact element: precision grows by `ord_t(p)`.
    pub fn mul_exact(&self, p: &LaurentPoly) -> Self {
        match p.ord_t() {
            Valuation::Infinite => TruncSeries::zero(self.prec),
            Valuation::Finite(v) => {
                let prec = self.prec + v;
                TruncSeries::from_poly(&(&self.known_part() * p), prec)
            }
        }
    }

    pub fn add_exact(&self, p: &LaurentPoly) -> Self {
        let q = TruncSeries::from_poly(p, self.prec);
        self + &q
    }

    /// Multiplicative inverse; the result has valuation `-ord_t(self)` and
    /// absolute precision `prec - 2·ord_t(self)`.
    pub fn invert(&self) -> Result<Self> {
        let v = self.ord_t()?;
        let rel = self.prec - v;
        let out_prec = rel - v;
        // u = self / t^v is a unit with u_0 != 0, known to relative precision rel.
        let u: alloc::vec::Vec<Scalar> = (0..rel).map(|i| self.coeff(v + i).unwrap()).collect();
        let u0_inv = u[0].inv()?;
        let mut w: alloc::vec::Vec<Scalar> = alloc::vec::Vec::with_capacity(rel as usize);
        w.push(u0_inv.clone());
        for n in 1..rel as usize {
            let mut acc = Scalar::zero();
            for i in 1..=n {
                if !u[i].is_zero() {
                    acc += &(&u[i] * &w[n - i]);
                }
            }
            w.push(-(acc * &u0_inv));
        }
        let coeffs = w
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64 - v, c))
            .collect();
        Ok(TruncSeries {
            coeffs,
            prec: out_prec,
        })
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(&k, _)| k != 0)
            .map(|(&k, v)| (k - 1, v * Scalar::from_int(k)))
            .collect();
        TruncSeries {
            coeffs,
            prec: self.prec - 1,
        }
    }

    pub fn coeff_scale(&self, lambda: &Scalar) -> Result<Self> {
        let known = self.known_part().coeff_scale(lambda)?;
        Ok(TruncSeries::from_poly(&known, self.prec))
    }

    /// `self^exp`; the zeroth power is `1` at the input's precision.
    pub fn pow(&self, exp: u32) -> Self {
        if exp == 0 {
            return TruncSeries::one(self.prec);
        }
        let mut acc = self.clone();
        for _ in 1..exp {
            acc = &acc * self;
        }
        acc
    }

    /// True if the two series agree on every coefficient both know.
    pub fn agrees_with(&self, other: &TruncSeries) -> bool {
        let p = self.prec.min(other.prec);
        self.with_prec(p) == other.with_prec(p)
    }
}

/// `exp(z) = sum z^i / i!` to absolute precision `min(prec, z.prec())`.
///
/// Requires `ord_t(z) >= 1` so the sum converges `t`-adically with exact
/// rational coefficients.
pub fn exp_series(z: &TruncSeries, prec: i64) -> Result<TruncSeries> {
    let floor = z.valuation_floor();
    if floor < 1 {
        return Err(Error::Domain(alloc::format!(
            "exp needs ord_t(z) >= 1, got {floor}"
        )));
    }
    let out_prec = prec.min(z.prec());
    let z = z.with_prec(out_prec);
    let mut sum = TruncSeries::one(out_prec);
    let mut term = TruncSeries::one(out_prec);
    let mut i = 1i64;
    while !term.is_zero_to_precision() && i < out_prec.max(1) {
        term = (&term * &z)
            .scale(&Scalar::new(1, i).unwrap())
            .with_prec(out_prec);
        sum = &sum + &term;
        i += 1;
    }
    Ok(sum.with_prec(out_prec))
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        let prec = self.prec.min(rhs.prec);
        let mut coeffs: BTreeMap<i64, Scalar> = self
            .coeffs
            .range(..prec)
            .map(|(&k, c)| (k, c.clone()))
            .collect();
        for (&k, c) in rhs.coeffs.range(..prec) {
            let slot = coeffs.entry(k).or_insert_with(Scalar::zero);
            *slot += c;
            if slot.is_zero() {
                coeffs.remove(&k);
            }
        }
        TruncSeries { coeffs, prec }
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        let coeffs = self.coeffs.iter().map(|(&k, c)| (k, -c)).collect();
        TruncSeries {
            coeffs,
            prec: self.prec,
        }
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        self + &(-rhs)
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    /// `(a + O(t^pa))(b + O(t^pb))` is known below `min(pa + vb, pb + va)`
    /// where `va`, `vb` are the proven valuation floors.
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        let prec = (self.prec + rhs.valuation_floor()).min(rhs.prec + self.valuation_floor());
        let mut coeffs: BTreeMap<i64, Scalar> = BTreeMap::new();
        for (&i, x) in &self.coeffs {
            for (&j, y) in &rhs.coeffs {
                if i + j >= prec {
                    break;
                }
                let slot = coeffs.entry(i + j).or_insert_with(Scalar::zero);
                *slot += &(x * y);
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        TruncSeries { coeffs, prec }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for TruncSeries {
            type Output = TruncSeries;
            fn $method(self, rhs: TruncSeries) -> TruncSeries {
                (&self).$method(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

/// `known part + O(t^prec)`.
impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "O(t^{})", self.prec);
        }
        write!(f, "{} + O(t^{})", self.known_part(), self.prec)
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn ts(s: &str, prec: i64) -> TruncSeries {
        TruncSeries::from_poly(&lp(s), prec)
    }

    #[test]
    fn product_tracks_precision() {
        // (t + 2t^2 + O(t^5)) * (t^2 - t^4 + O(t^5)), valuations 1 and 2:
        // known below min(5 + 2, 5 + 1) = 6.
        let a = ts("t + 2*t^2 + t^4", 5);
        let b = ts("t^2 - t^4", 5);
        let c = &a * &b;
        assert_eq!(c.prec(), 6);
        assert_eq!(c.ord_t(), Ok(3));
        assert_eq!(c.known_part(), lp("t^3 + 2*t^4 - t^5"));
    }

    #[test]
    fn indeterminate_valuation() {
        assert_eq!(
            TruncSeries::zero(5).ord_t(),
            Err(Error::IndeterminateValuation { prec: 5 })
        );
        assert_eq!(
            ts("t^7", 5).ord_t(),
            Err(Error::IndeterminateValuation { prec: 5 })
        );
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(ts("1 - t", 4).invert().unwrap(), ts("1 + t + t^2 + t^3", 4));
        let inv_t = ts("t", 3).invert().unwrap();
        assert_eq!(inv_t.known_part(), lp("t^-1"));
        assert_eq!(inv_t.prec(), 1);
        assert_eq!(
            ts("2 + t", 3).invert().unwrap(),
            ts("1/2 - 1/4*t + 1/8*t^2", 3)
        );
        assert!(TruncSeries::zero(3).invert().is_err());
    }

    #[test]
    fn exp_examples() {
        let e = exp_series(&ts("t", 10), 4).unwrap();
        assert_eq!(e, ts("1 + t + 1/2*t^2 + 1/6*t^3", 4));
        assert_eq!(exp_series(&TruncSeries::zero(9), 9).unwrap(), ts("1", 9));
        let e = exp_series(&ts("t + t^2", 10), 4).unwrap();
        assert_eq!(e, ts("1 + t + 3/2*t^2 + 7/6*t^3", 4));
        assert!(matches!(
            exp_series(&ts("1 + t", 5), 5),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn exp_precision_limited_by_argument() {
        let e = exp_series(&ts("t", 3), 10).unwrap();
        assert_eq!(e.prec(), 3);
    }

    #[test]
    fn derivative_drops_precision() {
        let d = ts("1 + t + 1/2*t^2 + 1/6*t^3", 4).derivative();
        assert_eq!(d, ts("1 + t + 1/2*t^2", 3));
    }

    #[test]
    fn mixed_product_uses_exact_valuation() {
        let a = ts("1 + t", 4);
        let c = a.mul_exact(&lp("t^2"));
        assert_eq!(c.prec(), 6);
        assert_eq!(c.known_part(), lp("t^2 + t^3"));
    }
}
