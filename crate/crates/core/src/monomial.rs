//! Monomial exponents, the graded order used throughout, and the counting
//! parameters of the determinant method.
//!
//! The monomial order is the graded one in which, for equal total degree,
//! `x^a < x^b` as soon as `a_i > b_i` at the first index where they differ.
//! This is graded reverse lexicographic order with `x_0` as the variable
//! that is "eliminated first": `x_0 < x_1 < ... < x_{m-1}`.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An exponent vector `a ∈ N^m` with its cached total degree `|a|`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Exponent {
    entries: Vec<u32>,
    total: u32,
}

impl Exponent {
    pub fn new(entries: Vec<u32>) -> Self {
        let total = entries.iter().sum();
        Exponent { entries, total }
    }

    pub fn zero(arity: usize) -> Self {
        Exponent {
            entries: alloc::vec![0; arity],
            total: 0,
        }
    }

    /// `x_i` in `arity` variables.
    pub fn unit(arity: usize, i: usize) -> Self {
        let mut entries = alloc::vec![0; arity];
        entries[i] = 1;
        Exponent { entries, total: 1 }
    }

    pub fn arity(&self) -> usize {
        self.entries.len()
    }

    pub fn total(&self) -> u32 {
        self.total
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> u32 {
        self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.total == 0
    }

    pub fn mul(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.arity(), other.arity());
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Exponent {
            entries,
            total: self.total + other.total,
        }
    }

    /// True when `x^self` divides `x^other`.
    pub fn divides(&self, other: &Exponent) -> bool {
        self.total <= other.total && self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }

    /// `x^self / x^other`, if exact.
    pub fn div(&self, other: &Exponent) -> Option<Exponent> {
        other.divides(self).then(|| {
            let entries = self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect();
            Exponent {
                entries,
                total: self.total - other.total,
            }
        })
    }

    pub fn lcm(&self, other: &Exponent) -> Exponent {
        Exponent::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Exponent) -> bool {
        self.entries
            .iter()
            .zip(&other.entries)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit `i` set iff variable `i` occurs. Arity must be at most 64.
    pub fn support_mask(&self) -> u64 {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .fold(0, |m, (i, _)| m | (1 << i))
    }
}

/// The graded order described in the module docs. Exponents of different
/// arity compare by arity first so the order is total on all exponents.
impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arity()
            .cmp(&other.arity())
            .then(self.total.cmp(&other.total))
            .then_with(|| {
                match self
                    .entries
                    .iter()
                    .zip(&other.entries)
                    .find(|(a, b)| a != b)
                {
                    Some((a, b)) => b.cmp(a),
                    None => Ordering::Equal,
                }
            })
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.entries)
    }
}

/// Compares two exponents of equal arity in the graded order.
pub fn grevlex_cmp(a: &Exponent, b: &Exponent) -> Result<Ordering> {
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch {
            expected: a.arity(),
            found: b.arity(),
        });
    }
    Ok(a.cmp(b))
}

/// A strictly increasing list of exponents of common arity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExponentSet {
    arity: usize,
    members: Vec<Exponent>,
}

impl ExponentSet {
    /// Sorts and deduplicates.
    pub fn new(arity: usize, mut members: Vec<Exponent>) -> Result<Self> {
        if let Some(bad) = members.iter().find(|e| e.arity() != arity) {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: bad.arity(),
            });
        }
        members.sort();
        members.dedup();
        Ok(ExponentSet { arity, members })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn members(&self) -> &[Exponent] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Exponent> {
        self.members.iter()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.members.iter().map(Exponent::total).max()
    }

    /// `sum over members of a_i`.
    pub fn coordinate_sum(&self, i: usize) -> u64 {
        self.members.iter().map(|e| e.get(i) as u64).sum()
    }
}

impl<'a> IntoIterator for &'a ExponentSet {
    type Item = &'a Exponent;
    type IntoIter = core::slice::Iter<'a, Exponent>;
    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeMode {
    /// `Λ_m(k)`: total degree exactly `k`.
    Exact,
    /// `Δ_m(k)`: total degree at most `k`.
    AtMost,
}

fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
        if acc > u64::MAX as u128 {
            return Err(Error::Overflow);
        }
    }
    Ok(acc as u64)
}

/// `L_m(k)`: number of monomials of degree exactly `k` in `m` variables.
pub fn count_exact(m: usize, k: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidArity(m));
    }
    binomial(k + m as u64 - 1, m as u64 - 1)
}

/// `D_m(k)`: number of monomials of degree at most `k`; zero when `k < 0`.
pub fn count_atmost(m: usize, k: i64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidArity(m));
    }
    if k < 0 {
        return Ok(0);
    }
    binomial(k as u64 + m as u64, m as u64)
}

/// All exponents of `Λ_m(k)` or `Δ_m(k)`, increasing in the graded order.
pub fn enumerate_grevlex(m: usize, k: u32, mode: DegreeMode) -> Result<ExponentSet> {
    if m == 0 {
        return Err(Error::InvalidArity(m));
    }
    let mut out = Vec::new();
    let degrees = match mode {
        DegreeMode::Exact => k..=k,
        DegreeMode::AtMost => 0..=k,
    };
    for deg in degrees {
        let mut current = alloc::vec![0u32; m];
        compositions(deg, 0, &mut current, &mut out);
    }
    ExponentSet::new(m, out)
}

fn compositions(remaining: u32, idx: usize, current: &mut Vec<u32>, out: &mut Vec<Exponent>) {
    if idx + 1 == current.len() {
        current[idx] = remaining;
        out.push(Exponent::new(current.clone()));
        return;
    }
    for a in 0..=remaining {
        current[idx] = a;
        compositions(remaining - a, idx + 1, current, out);
    }
    current[idx] = 0;
}

/// The determinant-method parameters for monomials of degree `<= d` in `n`
/// variables evaluated along an `m`-dimensional parametrization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DmParameters {
    pub n: usize,
    pub m: usize,
    pub d: u32,
    /// Number of monomials, `D_n(d)`.
    pub mu: u64,
    /// The unique `r` with `D_m(r-1) <= mu < D_m(r)`.
    pub r: u64,
    /// `sum_{k<=d} k L_n(k)`: total degree of all monomials.
    pub v: u64,
    /// `sum_{k<r} k L_m(k) + r (mu - D_m(r-1))`.
    pub e: u64,
}

pub fn dm_parameters(n: usize, m: usize, d: u32) -> Result<DmParameters> {
    if m == 0 || m >= n {
        return Err(Error::InvalidArity(m));
    }
    let mu = count_atmost(n, d as i64)?;
    let mut r = 0u64;
    while count_atmost(m, r as i64)? <= mu {
        r += 1;
    }
    let mut v = 0u64;
    for k in 0..=d as u64 {
        v = v
            .checked_add(k * count_exact(n, k)?)
            .ok_or(Error::Overflow)?;
    }
    let mut e = 0u64;
    for k in 1..r {
        e = e
            .checked_add(k * count_exact(m, k)?)
            .ok_or(Error::Overflow)?;
    }
    let tail = mu - count_atmost(m, r as i64 - 1)?;
    e = e
        .checked_add(r.checked_mul(tail).ok_or(Error::Overflow)?)
        .ok_or(Error::Overflow)?;
    Ok(DmParameters {
        n,
        m,
        d,
        mu,
        r,
        v,
        e,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VeRow {
    pub d: u32,
    pub v: u64,
    pub e: u64,
    /// `V/e` in lowest terms.
    pub ratio: Scalar,
}

/// `V/e` for `d = 1..=d_max`.
pub fn ve_ratio_table(n: usize, m: usize, d_max: u32) -> Result<Vec<VeRow>> {
    (1..=d_max)
        .map(|d| {
            let p = dm_parameters(n, m, d)?;
            let ratio = Scalar::new(p.v as i64, p.e as i64)?;
            Ok(VeRow {
                d,
                v: p.v,
                e: p.e,
                ratio,
            })
        })
        .collect()
}

/// Smallest tabulated `d` with `V/e < eps`.
pub fn first_d_below(table: &[VeRow], eps: &Scalar) -> Option<u32> {
    table.iter().find(|row| &row.ratio < eps).map(|row| row.d)
}
