use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::monomial::Exponent;
use crate::scalar::Scalar;
use crate::series::{LaurentPoly, SeriesValue};

/// Sparse polynomial in `arity` variables over `Q`, keyed by exponent in the
/// graded order. The leading term is the last entry.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Exponent, Scalar>,
}

impl MultiPoly {
    pub fn zero(arity: usize) -> Self {
        MultiPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Scalar) -> Self {
        MultiPoly::monomial(Exponent::zero(arity), c)
    }

    pub fn one(arity: usize) -> Self {
        MultiPoly::constant(arity, Scalar::one())
    }

    /// The variable `x_i`.
    pub fn var(arity: usize, i: usize) -> Self {
        assert!(i < arity, "variable x{i} out of range for arity {arity}");
        MultiPoly::monomial(Exponent::unit(arity, i), Scalar::one())
    }

    pub fn monomial(exp: Exponent, c: Scalar) -> Self {
        let mut p = MultiPoly::zero(exp.arity());
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// Sums repeated exponents and drops zeros.
    pub fn from_terms(
        arity: usize,
        terms: impl IntoIterator<Item = (Exponent, Scalar)>,
    ) -> Result<Self> {
        let mut p = MultiPoly::zero(arity);
        for (e, c) in terms {
            if e.arity() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: e.arity(),
                });
            }
            p.add_term(e, &c);
        }
        Ok(p)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Exponent::is_zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the leading one down.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Scalar)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, e: &Exponent) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn leading_term(&self) -> Result<(&Exponent, &Scalar)> {
        self.terms.iter().next_back().ok_or(Error::ZeroPolynomial)
    }

    pub(crate) fn leading_exponent(&self) -> Option<&Exponent> {
        self.terms.keys().next_back()
    }

    /// Total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponent::total).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e.get(i)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Exponent::total);
        match degrees.next() {
            Some(d) => degrees.all(|k| k == d),
            None => true,
        }
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self -= c * x^m * g` in place.
    pub(crate) fn sub_scaled_shift(&mut self, c: &Scalar, m: &Exponent, g: &MultiPoly) {
        for (e, gc) in &g.terms {
            self.add_term(e.mul(m), &-(c * gc));
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.arity);
        }
        let terms = self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect();
        MultiPoly {
            arity: self.arity,
            terms,
        }
    }

    pub fn mul_monomial(&self, m: &Exponent, c: &Scalar) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.arity);
        }
        let terms = self.terms.iter().map(|(e, a)| (e.mul(m), a * c)).collect();
        MultiPoly {
            arity: self.arity,
            terms,
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Ok((_, lc)) if !lc.is_one() => self.scale(&lc.inv().expect("nonzero")),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = MultiPoly::one(self.arity);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `d/dx_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = MultiPoly::zero(self.arity);
        for (e, c) in &self.terms {
            let k = e.get(i);
            if k > 0 {
                let mut entries = e.entries().to_vec();
                entries[i] -= 1;
                out.add_term(Exponent::new(entries), &(c * Scalar::from_int(k as i64)));
            }
        }
        out
    }

    /// Writes `self = sum_k c_k x_i^k` and returns the `c_k` (free of `x_i`).
    pub fn coefficients_in(&self, i: usize) -> Vec<MultiPoly> {
        let top = self.degree_in(i).unwrap_or(0) as usize;
        let mut out = vec![MultiPoly::zero(self.arity); top + 1];
        for (e, c) in &self.terms {
            let mut entries = e.entries().to_vec();
            let k = core::mem::replace(&mut entries[i], 0) as usize;
            out[k].add_term(Exponent::new(entries), c);
        }
        out
    }

    /// Moves variable `i` to position `positions[i]` in a ring of `arity` variables.
    pub fn embed(&self, arity: usize, positions: &[usize]) -> Result<Self> {
        if positions.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: positions.len(),
            });
        }
        if let Some(&bad) = positions.iter().find(|&&p| p >= arity) {
            return Err(Error::InvalidArity(bad));
        }
        let mut out = MultiPoly::zero(arity);
        for (e, c) in &self.terms {
            let mut entries = vec![0; arity];
            for (i, &p) in positions.iter().enumerate() {
                entries[p] += e.get(i);
            }
            out.add_term(Exponent::new(entries), c);
        }
        Ok(out)
    }

    /// Substitutes `x_i -> images[i]`; the result lives in the images' ring.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: images.len(),
            });
        }
        let target = images.first().map_or(0, MultiPoly::arity);
        if let Some(bad) = images.iter().find(|p| p.arity != target) {
            return Err(Error::ArityMismatch {
                expected: target,
                found: bad.arity,
            });
        }
        let powers = power_tables(self, images, MultiPoly::one(target), |a, b| a * b);
        let mut out = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(target, c.clone());
            for (i, &k) in e.entries().iter().enumerate() {
                if k > 0 {
                    term = &term * &powers[i][k as usize];
                }
            }
            out = out + term;
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        self.check_point(point.len())?;
        let powers = power_tables(self, point, Scalar::one(), |a, b| a * b);
        Ok(self.terms.iter().fold(Scalar::zero(), |acc, (e, c)| {
            let mut term = c.clone();
            for (i, &k) in e.entries().iter().enumerate() {
                term *= &powers[i][k as usize];
            }
            acc + term
        }))
    }

    /// Exact value at a point of `k[t, 1/t]^arity`.
    pub fn eval_laurent(&self, point: &[LaurentPoly]) -> Result<LaurentPoly> {
        self.check_point(point.len())?;
        let powers = power_tables(self, point, LaurentPoly::one(), |a, b| a * b);
        Ok(self.terms.iter().fold(LaurentPoly::zero(), |acc, (e, c)| {
            let mut term = LaurentPoly::constant(c.clone());
            for (i, &k) in e.entries().iter().enumerate() {
                if k > 0 {
                    term = &term * &powers[i][k as usize];
                }
            }
            acc + term
        }))
    }

    /// Value at a point whose coordinates may be exact or truncated; the
    /// result carries the provable precision.
    pub fn eval_series(&self, point: &[SeriesValue]) -> Result<SeriesValue> {
        self.check_point(point.len())?;
        let one = SeriesValue::Exact(LaurentPoly::one());
        let powers = power_tables(self, point, one, |a, b| a * b);
        Ok(self
            .terms
            .iter()
            .fold(SeriesValue::Exact(LaurentPoly::zero()), |acc, (e, c)| {
                let mut term = SeriesValue::Exact(LaurentPoly::constant(c.clone()));
                for (i, &k) in e.entries().iter().enumerate() {
                    if k > 0 {
                        term = &term * &powers[i][k as usize];
                    }
                }
                &acc + &term
            }))
    }

    fn check_point(&self, len: usize) -> Result<()> {
        if len != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: len,
            });
        }
        Ok(())
    }

    /// Printer using the given variable names instead of `x0, x1, ...`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        Named {
            poly: self,
            names: Some(names),
        }
    }
}

/// `powers[i][k] = values[i]^k` for every `k` up to the degree of `p` in `x_i`.
fn power_tables<T: Clone>(
    p: &MultiPoly,
    values: &[T],
    one: T,
    mul: impl Fn(&T, &T) -> T,
) -> Vec<Vec<T>> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let top = p.degree_in(i).unwrap_or(0);
            let mut row = Vec::with_capacity(top as usize + 1);
            row.push(one.clone());
            for k in 1..=top as usize {
                let next = mul(&row[k - 1], v);
                row.push(next);
            }
            row
        })
        .collect()
}

/// `F(x)` on a mixed exact/truncated point.
pub fn poly_eval_series(f: &MultiPoly, point: &[SeriesValue]) -> Result<SeriesValue> {
    f.eval_series(point)
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(
            self.arity, rhs.arity,
            "arity mismatch in polynomial addition"
        );
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(
            self.arity, rhs.arity,
            "arity mismatch in polynomial subtraction"
        );
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), &-c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(
            self.arity, rhs.arity,
            "arity mismatch in polynomial product"
        );
        let mut out = MultiPoly::zero(self.arity);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        MultiPoly {
            arity: self.arity,
            terms,
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

struct Named<'a> {
    poly: &'a MultiPoly,
    names: Option<&'a [String]>,
}

impl Named<'_> {
    fn write_name(&self, f: &mut fmt::Formatter<'_>, i: usize) -> fmt::Result {
        match self.names.and_then(|n| n.get(i)) {
            Some(name) => f.write_str(name),
            None => write!(f, "x{i}"),
        }
    }
}

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.poly.terms().enumerate() {
            let abs = c.abs();
            match (n, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if e.is_zero() {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            let mut first = true;
            for (i, &k) in e.entries().iter().enumerate().filter(|(_, &k)| k > 0) {
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                self.write_name(f, i)?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// Canonical text: terms from the leading one down, variables `x0, x1, ...`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(
            &Named {
                poly: self,
                names: None,
            },
            f,
        )
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.arity, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(2, i)
    }

    fn c(n: i64) -> MultiPoly {
        MultiPoly::constant(2, Scalar::from_int(n))
    }

    #[test]
    fn leading_terms_follow_the_order() {
        let p = &x(0).pow(2) + &(&x(0) * &x(1));
        assert_eq!(p.leading_term().unwrap().0, &Exponent::new(vec![1, 1]));
        assert_eq!(
            c(5).leading_term().unwrap(),
            (&Exponent::zero(2), &Scalar::from_int(5))
        );
        let q = &(&MultiPoly::var(3, 0) * &MultiPoly::var(3, 2)) + &MultiPoly::var(3, 1).pow(2);
        assert_eq!(q.leading_term().unwrap().0, &Exponent::new(vec![0, 2, 0]));
        assert_eq!(
            MultiPoly::zero(2).leading_term(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn ring_arithmetic() {
        let a = &x(0) + &c(1);
        let b = &x(0) - &c(1);
        assert_eq!(&a * &b, &x(0).pow(2) - &c(1));
        assert!((&a - &a).is_zero());
        assert!((&x(1) * &x(0)).is_homogeneous());
        assert!(!a.is_homogeneous());
    }

    #[test]
    fn evaluation() {
        let t = LaurentPoly::t();
        let f = &x(1) - &x(0).pow(2);
        assert!(f.eval_laurent(&[t.clone(), t.pow(2)]).unwrap().is_zero());
        let g = &x(0) + &x(1);
        assert_eq!(
            g.eval(&[Scalar::one(), -Scalar::one()]).unwrap(),
            Scalar::zero()
        );
        let h = &(&x(1).pow(2) - &x(0).pow(3)) - &c(1);
        let v = h
            .eval_series(&[
                SeriesValue::Exact(t.clone()),
                SeriesValue::Exact(LaurentPoly::one()),
            ])
            .unwrap();
        assert_eq!(v, SeriesValue::Exact(-t.pow(3)));
        assert_eq!(
            h.eval(&[Scalar::one()]),
            Err(Error::ArityMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn derivative_and_coefficients() {
        let f = &(&x(0).pow(2) * &x(1)) + &x(1).pow(3);
        assert_eq!(
            f.derivative(1),
            &x(0).pow(2) + &x(1).pow(2).scale(&Scalar::from_int(3))
        );
        let cs = f.coefficients_in(1);
        assert_eq!(cs.len(), 4);
        assert_eq!(cs[1], x(0).pow(2));
        assert_eq!(cs[3], c(1));
        assert!(cs[0].is_zero());
    }

    #[test]
    fn substitution_and_embedding() {
        let f = &x(1) - &x(0).pow(2);
        let u = MultiPoly::var(1, 0);
        let sub = f.substitute(&[u.clone(), u.pow(2)]).unwrap();
        assert!(sub.is_zero());
        let moved = f.embed(3, &[2, 0]).unwrap();
        assert_eq!(moved, &MultiPoly::var(3, 0) - &MultiPoly::var(3, 2).pow(2));
    }

    #[test]
    fn printing() {
        let f = &(&x(1) - &x(0).pow(2)) + &c(3);
        assert_eq!(f.to_string(), "-x0^2 + x1 + 3");
        let names = [String::from("x"), String::from("y")];
        assert_eq!(f.display_with(&names).to_string(), "-x^2 + y + 3");
        let g = (&x(0) * &x(1)).scale(&Scalar::new(-1, 2).unwrap());
        assert_eq!(g.to_string(), "-1/2*x0*x1");
    }
}
