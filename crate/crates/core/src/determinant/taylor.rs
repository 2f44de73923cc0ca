//! One-variable maps with exact Taylor data, and the `T_r` check
//! `ord(psi(x) - T_y^{<r}(x)) >= r * ord(x - y)`.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{exp_series, LaurentPoly, SeriesValue, Valuation};

/// A map `K -> K` that can report its value and Taylor coefficients
/// `psi^(j)(y) / j!`. Non-polynomial maps work to absolute precision `prec`.
pub trait TaylorMap {
    fn value(&self, x: &SeriesValue, prec: i64) -> Result<SeriesValue>;

    /// The first `order` Taylor coefficients at `y`.
    fn taylor(&self, y: &SeriesValue, order: u32, prec: i64) -> Result<Vec<SeriesValue>>;
}

fn exact(p: LaurentPoly) -> SeriesValue {
    SeriesValue::Exact(p)
}

fn sum(values: impl IntoIterator<Item = SeriesValue>) -> SeriesValue {
    values
        .into_iter()
        .fold(exact(LaurentPoly::zero()), |acc, v| &acc + &v)
}

/// `sum_k coeffs[k] x^k` with coefficients in `k[t, 1/t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    coeffs: Vec<LaurentPoly>,
}

impl PolyMap {
    pub fn new(coeffs: Vec<LaurentPoly>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(LaurentPoly::is_zero) {
            coeffs.pop();
        }
        PolyMap { coeffs }
    }

    /// `x^k`.
    pub fn power(k: usize) -> Self {
        let mut coeffs = alloc::vec![LaurentPoly::zero(); k + 1];
        coeffs[k] = LaurentPoly::one();
        PolyMap { coeffs }
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval_exact(&self, x: &LaurentPoly) -> LaurentPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(LaurentPoly::zero(), |acc, c| &(&acc * x) + c)
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &PolyMap) -> PolyMap {
        let mut acc = PolyMap::new(Vec::new());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&PolyMap::new(alloc::vec![c.clone()]));
        }
        acc
    }

    pub fn add(&self, other: &PolyMap) -> PolyMap {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = LaurentPoly::zero();
        PolyMap::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) + other.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn mul(&self, other: &PolyMap) -> PolyMap {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return PolyMap::new(Vec::new());
        }
        let mut out = alloc::vec![LaurentPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        PolyMap::new(out)
    }
}

impl TaylorMap for PolyMap {
    fn value(&self, x: &SeriesValue, _prec: i64) -> Result<SeriesValue> {
        Ok(self
            .coeffs
            .iter()
            .rev()
            .fold(exact(LaurentPoly::zero()), |acc, c| {
                &(&acc * x) + &exact(c.clone())
            }))
    }

    fn taylor(&self, y: &SeriesValue, order: u32, _prec: i64) -> Result<Vec<SeriesValue>> {
        let deg = self.coeffs.len();
        let mut powers = alloc::vec![exact(LaurentPoly::one())];
        for k in 1..deg {
            let next = &powers[k - 1] * y;
            powers.push(next);
        }
        Ok((0..order as usize)
            .map(|j| {
                sum((j..deg).map(|k| {
                    let binom = Scalar::binomial(k as u64, j as u64);
                    (&exact(self.coeffs[k].clone()) * &powers[k - j]).scale(&binom)
                }))
            })
            .collect())
    }
}

/// `exp` on `t k[[t]]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExpMap;

impl TaylorMap for ExpMap {
    fn value(&self, x: &SeriesValue, prec: i64) -> Result<SeriesValue> {
        Ok(SeriesValue::Approx(exp_series(&x.to_series(prec), prec)?))
    }

    fn taylor(&self, y: &SeriesValue, order: u32, prec: i64) -> Result<Vec<SeriesValue>> {
        let e = self.value(y, prec)?;
        Ok((0..order as u64)
            .map(|j| e.scale(&Scalar::factorial(j).inv().expect("nonzero")))
            .collect())
    }
}

/// Reports only the first `keep` Taylor coefficients of `inner`, the rest as
/// zero. Models a map whose claimed Taylor data is too short.
pub struct TruncatedTaylor {
    pub inner: Box<dyn TaylorMap>,
    pub keep: u32,
}

impl TaylorMap for TruncatedTaylor {
    fn value(&self, x: &SeriesValue, prec: i64) -> Result<SeriesValue> {
        self.inner.value(x, prec)
    }

    fn taylor(&self, y: &SeriesValue, order: u32, prec: i64) -> Result<Vec<SeriesValue>> {
        let mut out = self.inner.taylor(y, order.min(self.keep), prec)?;
        out.resize(order as usize, exact(LaurentPoly::zero()));
        Ok(out)
    }
}

/// `outer(inner(x))`, with Taylor data from composing truncated expansions.
pub struct Compose {
    pub outer: Box<dyn TaylorMap>,
    pub inner: Box<dyn TaylorMap>,
}

impl TaylorMap for Compose {
    fn value(&self, x: &SeriesValue, prec: i64) -> Result<SeriesValue> {
        let y = self.inner.value(x, prec)?;
        self.outer.value(&y, prec)
    }

    fn taylor(&self, y: &SeriesValue, order: u32, prec: i64) -> Result<Vec<SeriesValue>> {
        let n = order as usize;
        if n == 0 {
            return Ok(Vec::new());
        }
        let p = self.inner.taylor(y, order, prec)?;
        let f = self.outer.taylor(&p[0], order, prec)?;
        // sum_k f_k (p(h) - p_0)^k, truncated below h^order
        let mut shift: Vec<SeriesValue> = p.clone();
        shift[0] = exact(LaurentPoly::zero());
        let mut power = alloc::vec![exact(LaurentPoly::zero()); n];
        power[0] = exact(LaurentPoly::one());
        let mut out = alloc::vec![exact(LaurentPoly::zero()); n];
        for fk in &f {
            for (o, q) in out.iter_mut().zip(&power) {
                *o = &*o + &(fk * q);
            }
            power = truncated_product(&power, &shift, n);
        }
        Ok(out)
    }
}

fn truncated_product(a: &[SeriesValue], b: &[SeriesValue], n: usize) -> Vec<SeriesValue> {
    (0..n)
        .map(|k| sum((0..=k).map(|i| &a[i] * &b[k - i])))
        .collect()
}

/// `y -> a t^j (y - c)^r + b`.
pub fn power_substitution(
    a: &Scalar,
    j: u32,
    c: &LaurentPoly,
    b: &LaurentPoly,
    r: u32,
) -> Result<PolyMap> {
    if a.is_zero() {
        return Err(Error::ZeroScale);
    }
    let lead = LaurentPoly::monomial(a.clone(), j as i64);
    let shifted = PolyMap::new(alloc::vec![-c, LaurentPoly::one()]);
    let mut pw = PolyMap::new(alloc::vec![LaurentPoly::one()]);
    for _ in 0..r {
        pw = pw.mul(&shifted);
    }
    Ok(pw
        .mul(&PolyMap::new(alloc::vec![lead]))
        .add(&PolyMap::new(alloc::vec![b.clone()])))
}

/// How far one sample clears the `T_r` inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Margin {
    Exact(i64),
    /// The difference vanished to the working precision; the true margin
    /// is at least this.
    AtLeast(i64),
    Infinite,
}

impl Margin {
    pub fn lower_bound(self) -> Valuation {
        match self {
            Margin::Exact(m) | Margin::AtLeast(m) => Valuation::Finite(m),
            Margin::Infinite => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Margin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Margin::Exact(m) => write!(f, "{m}"),
            Margin::AtLeast(m) => write!(f, ">={m}"),
            Margin::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrCheckReport {
    pub r: u32,
    pub samples: Vec<(SeriesValue, SeriesValue)>,
    pub margins: Vec<Margin>,
    pub worst_margin: Margin,
    pub pass: bool,
}

/// Computes `ord(psi(x) - T_y^{<r}(x)) - r ord(x - y)` for each `(x, y)`.
/// Fails with `InsufficientPrecision` when a difference vanishes to the
/// working precision before the inequality is settled.
pub fn tr_check(
    psi: &dyn TaylorMap,
    samples: &[(SeriesValue, SeriesValue)],
    r: u32,
    prec: i64,
) -> Result<TrCheckReport> {
    if samples.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut margins = Vec::with_capacity(samples.len());
    for (x, y) in samples {
        let h = x - y;
        let Valuation::Finite(dist) = h.ord_t()? else {
            return Err(Error::Precondition("sample pair with x = y".into()));
        };
        let coeffs = psi.taylor(y, r, prec)?;
        let mut approx = exact(LaurentPoly::zero());
        let mut hp = exact(LaurentPoly::one());
        for c in &coeffs {
            approx = &approx + &(c * &hp);
            hp = &hp * &h;
        }
        let diff = &psi.value(x, prec)? - &approx;
        let need = r as i64 * dist;
        let margin = match &diff {
            SeriesValue::Exact(p) => match p.ord_t() {
                Valuation::Finite(v) => Margin::Exact(v - need),
                Valuation::Infinite => Margin::Infinite,
            },
            SeriesValue::Approx(s) => match s.ord_t() {
                Ok(v) => Margin::Exact(v - need),
                Err(_) if s.prec() >= need => Margin::AtLeast(s.prec() - need),
                Err(_) => {
                    return Err(Error::InsufficientPrecision {
                        needed: need,
                        available: s.prec(),
                    })
                }
            },
        };
        margins.push(margin);
    }
    let worst_margin = *margins
        .iter()
        .min_by_key(|m| m.lower_bound())
        .expect("nonempty");
    let pass = worst_margin.lower_bound() >= Valuation::Finite(0);
    Ok(TrCheckReport {
        r,
        samples: samples.to_vec(),
        margins,
        worst_margin,
        pass,
    })
}
