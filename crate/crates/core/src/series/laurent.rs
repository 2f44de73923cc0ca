use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::Valuation;

/// Exact element of `k[t, t^-1]` with finite support.
///
/// No zero coefficient is ever stored, so the zero element has empty
/// support and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Scalar>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Scalar::one())
    }

    /// The uniformizer `t`.
    pub fn t() -> Self {
        LaurentPoly::monomial(Scalar::one(), 1)
    }

    pub fn constant(c: Scalar) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    pub fn monomial(c: Scalar, degree: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(degree, c);
        }
        LaurentPoly { terms }
    }

    /// Builds `sum c_k t^k` from `(k, c_k)` pairs; repeated degrees accumulate.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Scalar)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (k, c) in terms {
            p.add_term(k, &c);
        }
        p
    }

    /// `sum_i coeffs[i] t^(offset + i)`.
    pub fn from_dense(offset: i64, coeffs: impl IntoIterator<Item = Scalar>) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (offset + i as i64, c))
            .collect();
        LaurentPoly { terms }
    }

    /// Integer coefficients in ascending degree from 0.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        LaurentPoly::from_dense(0, coeffs.iter().map(|&c| Scalar::from_int(c)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == 0)
    }

    pub fn ord_t(&self) -> Valuation {
        self.terms
            .keys()
            .next()
            .map_or(Valuation::Infinite, |&k| Valuation::Finite(k))
    }

    /// Largest degree with a nonzero coefficient; `None` for zero (degree −∞).
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, degree: i64) -> Scalar {
        self.terms.get(&degree).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Scalar)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficients from degree `lo` through `hi` inclusive.
    pub fn dense(&self, lo: i64, hi: i64) -> Vec<Scalar> {
        (lo..=hi).map(|k| self.coeff(k)).collect()
    }

    pub(crate) fn add_term(&mut self, degree: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(degree).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&degree);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        let terms = self.terms.iter().map(|(&k, v)| (k, v * c)).collect();
        LaurentPoly { terms }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&d, v)| (d + k, v.clone()))
            .collect();
        LaurentPoly { terms }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = LaurentPoly::one();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Terms of degree strictly below `bound`.
    pub fn truncate_below(&self, bound: i64) -> Self {
        let terms = self
            .terms
            .range(..bound)
            .map(|(&k, v)| (k, v.clone()))
            .collect();
        LaurentPoly { terms }
    }

    /// Formal derivative `d/dt`.
    pub fn derivative(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(&k, _)| k != 0)
            .map(|(&k, v)| (k - 1, v * Scalar::from_int(k)))
            .collect();
        LaurentPoly { terms }
    }

    /// The coefficient-scaling automorphism `sum a_j t^j -> sum a_j (λt)^j`.
    pub fn coeff_scale(&self, lambda: &Scalar) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::ZeroScale);
        }
        let terms = self
            .terms
            .iter()
            .map(|(&k, v)| (k, v * lambda.pow(k as i32)))
            .collect();
        Ok(LaurentPoly { terms })
    }

    /// Value at `t = c` for a polynomial (no negative degrees unless `c ≠ 0`).
    pub fn eval(&self, c: &Scalar) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (&k, v) in &self.terms {
            if k < 0 && c.is_zero() {
                return Err(Error::DivisionByZero);
            }
            acc += &(v * c.pow(k as i32));
        }
        Ok(acc)
    }

    fn leading(&self) -> Option<(i64, &Scalar)> {
        self.terms.iter().next_back().map(|(&k, c)| (k, c))
    }

    /// Quotient and remainder in `k[t]` after shifting both operands to
    /// valuation zero; the shift is restored on the quotient.
    pub fn div_rem(&self, divisor: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
        let Valuation::Finite(dv) = divisor.ord_t() else {
            return Err(Error::DivisionByZero);
        };
        let Valuation::Finite(nv) = self.ord_t() else {
            return Ok((LaurentPoly::zero(), LaurentPoly::zero()));
        };
        let den = divisor.shift(-dv).dense(0, divisor.degree().unwrap() - dv);
        let mut num = self.shift(-nv).dense(0, self.degree().unwrap() - nv);
        let (quot, rem) = dense_div_rem(&mut num, &den);
        Ok((
            LaurentPoly::from_dense(nv - dv, quot),
            LaurentPoly::from_dense(nv, rem),
        ))
    }

    /// Exact quotient in `k[t, t^-1]`, or `None` when `divisor` does not divide.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        // A single-term divisor needs no long division.
        if divisor.num_terms() == 1 {
            let (k, c) = divisor.leading().unwrap();
            return Some(self.shift(-k).scale(&c.inv().ok()?));
        }
        let (q, r) = self.div_rem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor in `k[t]` of two polynomials with
    /// nonnegative support (including the common power of `t`).
    pub fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        match (self.ord_t(), other.ord_t()) {
            (Valuation::Infinite, _) => other.monic(),
            (_, Valuation::Infinite) => self.monic(),
            (Valuation::Finite(x), Valuation::Finite(y)) => {
                gcd_unit_ord(self.shift(-x), other.shift(-y)).shift(x.min(y))
            }
        }
    }

    /// Scales so the top coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> LaurentPoly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv().unwrap()),
            None => LaurentPoly::zero(),
        }
    }
}

// Euclid in k[t, 1/t]; both inputs are prime to t, so the result is too
// once its own power of t is stripped.
fn gcd_unit_ord(mut a: LaurentPoly, mut b: LaurentPoly) -> LaurentPoly {
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b).expect("nonzero divisor");
        a = b;
        b = r;
    }
    match a.ord_t() {
        Valuation::Finite(v) => a.shift(-v).monic(),
        Valuation::Infinite => a,
    }
}

fn dense_div_rem(num: &mut Vec<Scalar>, den: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    let dn = den.len() - 1;
    let lead_inv = den[dn].inv().expect("trimmed divisor");
    if num.len() <= dn {
        return (Vec::new(), core::mem::take(num));
    }
    let mut quot = vec![Scalar::zero(); num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = &num[i + dn] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            if !d.is_zero() {
                num[i + j] -= &(&c * d);
            }
        }
        quot[i] = c;
    }
    num.truncate(dn);
    (quot, core::mem::take(num))
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, &-c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if self.num_terms() == 1 || rhs.num_terms() == 1 {
            let (mono, other) = if self.num_terms() == 1 {
                (self, rhs)
            } else {
                (rhs, self)
            };
            let (k, c) = mono.leading().unwrap();
            return other.shift(k).scale(c);
        }
        let (alo, ahi) = (
            self.terms.keys().next().copied().unwrap(),
            self.degree().unwrap(),
        );
        let (blo, bhi) = (
            rhs.terms.keys().next().copied().unwrap(),
            rhs.degree().unwrap(),
        );
        let mut acc = vec![Scalar::zero(); (ahi - alo + bhi - blo + 1) as usize];
        for (&i, x) in &self.terms {
            for (&j, y) in &rhs.terms {
                acc[(i - alo + j - blo) as usize] += &(x * y);
            }
        }
        LaurentPoly::from_dense(alo + blo, acc)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(&k, v)| (k, -v)).collect();
        LaurentPoly { terms }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<Scalar> for LaurentPoly {
    fn from(c: Scalar) -> Self {
        LaurentPoly::constant(c)
    }
}

/// Writes a term `c*var^k` with sign handled by the caller.
fn write_term(f: &mut impl fmt::Write, c: &Scalar, var: &str, k: i64) -> fmt::Result {
    match k {
        0 => write!(f, "{c}"),
        _ => {
            if !c.is_one() {
                write!(f, "{c}*")?;
            }
            if k == 1 {
                write!(f, "{var}")
            } else {
                write!(f, "{var}^{k}")
            }
        }
    }
}

/// Canonical text: terms in ascending degree, e.g. `t^-1 + 2 - 3/2*t^4`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&k, c)) in self.terms.iter().enumerate() {
            let abs = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write_term(f, &abs, "t", k)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses sums of `c*t^k` terms; `k` may be negative and `c` may be
    /// an integer, `p/q` or a decimal.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = TermParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let mut out = LaurentPoly::zero();
        p.skip_ws();
        if p.at_end() {
            return Err(p.error("empty input"));
        }
        let mut first = true;
        while !p.at_end() {
            let negative = match p.peek() {
                Some(b'+') => {
                    p.pos += 1;
                    false
                }
                Some(b'-') => {
                    p.pos += 1;
                    true
                }
                _ if first => false,
                _ => return Err(p.error("expected '+' or '-'")),
            };
            first = false;
            p.skip_ws();
            let (mut c, k) = p.term()?;
            if negative {
                c = -c;
            }
            out.add_term(k, &c);
            p.skip_ws();
        }
        Ok(out)
    }
}

struct TermParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl TermParser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: String::from(msg),
        }
    }

    fn number(&mut self) -> Result<Scalar> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9' | b'.' | b'/')) {
            self.pos += 1;
        }
        let text = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: String::from("malformed coefficient"),
        })
    }

    fn term(&mut self) -> Result<(Scalar, i64)> {
        let mut c = Scalar::one();
        let mut has_coeff = false;
        if matches!(self.peek(), Some(b'0'..=b'9' | b'.')) {
            c = self.number()?;
            has_coeff = true;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
            } else {
                return Ok((c, 0));
            }
        }
        if self.peek() != Some(b't') {
            return Err(self.error(if has_coeff {
                "expected 't'"
            } else {
                "expected a term"
            }));
        }
        self.pos += 1;
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok((c, 1));
        }
        self.pos += 1;
        self.skip_ws();
        let paren = self.peek() == Some(b'(');
        if paren {
            self.pos += 1;
        }
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        let text = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let k: i64 = text.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: String::from("malformed exponent"),
        })?;
        if paren {
            if self.peek() != Some(b')') {
                return Err(self.error("expected ')'"));
            }
            self.pos += 1;
        }
        Ok((c, k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(lp("1 + t") * lp("1 - t"), lp("1 - t^2"));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let sum = lp("t^2 + t^3") + lp("-t^2");
        assert_eq!(sum, lp("t^3"));
        assert_eq!(sum.num_terms(), 1);
    }

    #[test]
    fn valuation_and_degree() {
        assert_eq!(lp("t^2 + t^3").ord_t(), Valuation::Finite(2));
        assert_eq!(LaurentPoly::zero().ord_t(), Valuation::Infinite);
        assert_eq!(LaurentPoly::zero().degree(), None);
        assert_eq!(lp("t^-3 + 5").ord_t(), Valuation::Finite(-3));
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "1", "-t", "t^-1 + 2 - 3/2*t^4", "1/2*t^-2 - t^7"] {
            assert_eq!(lp(s).to_string(), s);
        }
        assert_eq!(
            lp("3*t^(-2)"),
            LaurentPoly::monomial(Scalar::from_int(3), -2)
        );
        assert_eq!(
            lp("0.5*t"),
            LaurentPoly::monomial(Scalar::new(1, 2).unwrap(), 1)
        );
    }

    #[test]
    fn parse_errors_carry_position() {
        match "1 + 2*x".parse::<LaurentPoly>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        assert!("1 2".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn coeff_scale_examples() {
        let two = Scalar::from_int(2);
        assert_eq!(
            lp("1 + 3*t + t^2").coeff_scale(&two).unwrap(),
            lp("1 + 6*t + 4*t^2")
        );
        assert_eq!(lp("t^-1").coeff_scale(&two).unwrap(), lp("1/2*t^-1"));
        assert_eq!(lp("1").coeff_scale(&Scalar::zero()), Err(Error::ZeroScale));
    }

    #[test]
    fn division() {
        let a = lp("1 + t");
        let b = lp("2 - t + t^3");
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&lp("1 + 2*t")), None);
        assert_eq!(lp("t^5 + t^3").div_exact(&lp("t^2")), Some(lp("t^3 + t")));
        let (q, r) = lp("t^3 + 1").div_rem(&lp("t - 1")).unwrap();
        assert_eq!(q, lp("t^2 + t + 1"));
        assert_eq!(r, lp("2"));
    }

    #[test]
    fn gcd_is_monic_and_keeps_t_powers() {
        let g = lp("2*t^2 + 2*t^3").gcd(&lp("3*t - 3*t^3"));
        assert_eq!(g, lp("t + t^2"));
        assert_eq!(lp("5").gcd(&LaurentPoly::zero()), lp("1"));
    }

    #[test]
    fn power_and_derivative() {
        assert_eq!(lp("1 + t").pow(3), lp("1 + 3*t + 3*t^2 + t^3"));
        assert_eq!(lp("1 + t").pow(0), lp("1"));
        assert_eq!(lp("t^-1 + 3 + t^2").derivative(), lp("-t^-2 + 2*t"));
    }
}
