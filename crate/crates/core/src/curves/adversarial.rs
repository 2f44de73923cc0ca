use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{LaurentPoly, ResidueClass};

/// Data of the series `f(x) = sum_n t^{N_n} x^{N_n} prod (x - i - j t^l)`,
/// the product over `1 <= i, l <= N_n` and `1 <= j <= F(N_n)`, cut after
/// `truncation` outer terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdversarialParams {
    n_seq: Vec<u64>,
    f_vals: Vec<u64>,
    truncation: usize,
}

impl AdversarialParams {
    /// `n_seq` must increase strictly and `f_vals` (the values `F(N_n)`)
    /// must not decrease; all entries are at least 1.
    pub fn new(n_seq: Vec<u64>, f_vals: Vec<u64>, truncation: usize) -> Result<Self> {
        if n_seq.is_empty() || n_seq.len() != f_vals.len() {
            return Err(Error::Precondition(format!(
                "need matching nonempty sequences, got {} and {} entries",
                n_seq.len(),
                f_vals.len()
            )));
        }
        if n_seq.iter().chain(&f_vals).any(|&v| v == 0) {
            return Err(Error::Precondition(
                "sequence entries must be at least 1".into(),
            ));
        }
        if n_seq.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition(
                "N_n must be strictly increasing".into(),
            ));
        }
        if f_vals.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Precondition("F(N_n) must be nondecreasing".into()));
        }
        if truncation == 0 || truncation > n_seq.len() {
            return Err(Error::Precondition(format!(
                "truncation must lie in 1..={}, got {truncation}",
                n_seq.len()
            )));
        }
        Ok(AdversarialParams {
            n_seq,
            f_vals,
            truncation,
        })
    }

    pub fn n_seq(&self) -> &[u64] {
        &self.n_seq
    }

    pub fn f_vals(&self) -> &[u64] {
        &self.f_vals
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Arguments `i + j t^l` with `1 <= i, l <= N_n`, `1 <= j <= F(N_n)`,
    /// as triples `(i, j, l)`.
    pub fn in_range_arguments(&self, n: usize) -> impl Iterator<Item = (u64, u64, u64)> + '_ {
        let (big_n, big_f) = (self.n_seq[n], self.f_vals[n]);
        (1..=big_n)
            .flat_map(move |i| (1..=big_f).flat_map(move |j| (1..=big_n).map(move |l| (i, j, l))))
    }

    /// `3 N_n N_{n-1}^2 F(N_{n-1})`, with `N_{-1} = 0`.
    pub fn degree_chain_bound(&self, n: usize) -> u64 {
        match n {
            0 => 0,
            _ => 3 * self.n_seq[n] * self.n_seq[n - 1].pow(2) * self.f_vals[n - 1],
        }
    }

    /// `N_{n-1} + N_n N_{n-1} + N_n N_{n-1}^2 F(N_{n-1})`: the `t`-degree of
    /// the first `n` outer terms at `x = N_n + j t^{N_n}`.
    pub fn degree_chain_exact(&self, n: usize) -> u64 {
        match n {
            0 => 0,
            _ => {
                let (a, b, f) = (self.n_seq[n - 1], self.n_seq[n], self.f_vals[n - 1]);
                a + b * a + b * a * a * f
            }
        }
    }

    /// The `n`-th outer term at `x`.
    pub fn term(&self, n: usize, x: &LaurentPoly) -> LaurentPoly {
        let (big_n, big_f) = (self.n_seq[n], self.f_vals[n]);
        if hits_root(x, big_n, big_f) {
            return LaurentPoly::zero();
        }
        let mut acc = LaurentPoly::monomial(Scalar::one(), big_n as i64) * x.pow(big_n as u32);
        for i in 1..=big_n {
            for l in 1..=big_n {
                for j in 1..=big_f {
                    let root = LaurentPoly::from_terms([
                        (0, Scalar::from_int(i as i64)),
                        (l as i64, Scalar::from_int(j as i64)),
                    ]);
                    acc = &acc * &(x - &root);
                }
            }
        }
        acc
    }
}

/// Whether `x = i + j t^l` for some in-range `(i, j, l)`.
fn hits_root(x: &LaurentPoly, big_n: u64, big_f: u64) -> bool {
    let i = x.coeff(0);
    let rest = x - &LaurentPoly::constant(i.clone());
    if rest.num_terms() != 1 {
        return false;
    }
    let (l, j) = rest.terms().next().expect("one term");
    let in_range = |v: &Scalar, hi: u64| {
        v.to_i64().is_some_and(|k| k >= 1 && k as u64 <= hi) && v.is_integer()
    };
    in_range(&i, big_n) && in_range(j, big_f) && l >= 1 && l as u64 <= big_n
}

/// The truncated series at `x`, exactly.
pub fn adversarial_eval(params: &AdversarialParams, x: &LaurentPoly) -> Result<LaurentPoly> {
    if !super::nonnegative(x) {
        return Err(Error::Domain(format!("{x} is not in k[t]")));
    }
    Ok((0..params.truncation).fold(LaurentPoly::zero(), |acc, n| acc + params.term(n, x)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseReport {
    pub n: usize,
    pub s: u32,
    pub e: u32,
    /// The points `(N_n + j t^{N_n}, f(N_n + j t^{N_n}))`, `1 <= j <= F(N_n)`.
    pub points: Vec<(LaurentPoly, LaurentPoly)>,
    /// Largest `t`-degree among the points' coordinates.
    pub max_degree: i64,
    pub chain_exact: u64,
    pub chain_bound: u64,
    /// Every point has both coordinates of degree below `s`.
    pub in_cs: bool,
    /// The class of `N_n` mod `t^e`, shared by every first coordinate.
    pub residue: ResidueClass,
    pub collapsed: bool,
    pub fiber_size: usize,
}

impl CollapseReport {
    pub fn degrees_within_chain(&self) -> bool {
        self.max_degree <= self.chain_bound as i64
    }
}

/// The least `s` for which the collapsing set at index `n` has height at most `s`.
pub fn minimal_height(params: &AdversarialParams, n: usize) -> Result<u32> {
    let pts = collapse_points(params, n)?;
    Ok((max_degree(&pts) + 1) as u32)
}

fn collapse_points(
    params: &AdversarialParams,
    n: usize,
) -> Result<Vec<(LaurentPoly, LaurentPoly)>> {
    if n >= params.truncation {
        return Err(Error::Precondition(format!(
            "index {n} is beyond the truncation {}",
            params.truncation
        )));
    }
    let big_n = params.n_seq[n];
    (1..=params.f_vals[n])
        .map(|j| {
            let x = LaurentPoly::from_terms([
                (0, Scalar::from_int(big_n as i64)),
                (big_n as i64, Scalar::from_int(j as i64)),
            ]);
            let y = adversarial_eval(params, &x)?;
            Ok((x, y))
        })
        .collect()
}

fn max_degree(pts: &[(LaurentPoly, LaurentPoly)]) -> i64 {
    pts.iter()
        .flat_map(|(x, y)| [x.degree(), y.degree()])
        .flatten()
        .max()
        .unwrap_or(0)
}

/// Evaluates the set `S` at index `n`, checks it lies in `C_s`, and checks
/// that its first coordinates agree mod `t^e`.
pub fn adversarial_collapse_check(
    params: &AdversarialParams,
    n: usize,
    s: u32,
    e: u32,
) -> Result<CollapseReport> {
    let pts = collapse_points(params, n)?;
    let big_n = params.n_seq[n];
    if e == 0 || e as u64 > big_n {
        return Err(Error::Precondition(format!(
            "collapse needs 1 <= e <= N_n = {big_n}, got e = {e}"
        )));
    }
    let top = max_degree(&pts);
    if top >= s as i64 {
        return Err(Error::PrecisionGap {
            degree: top,
            s: s as i64,
        });
    }
    let residue = ResidueClass::of_poly(&LaurentPoly::constant(Scalar::from_int(big_n as i64)), e)?;
    let mut collapsed = true;
    for (x, _) in &pts {
        collapsed &= ResidueClass::of_poly(x, e)? == residue;
    }
    Ok(CollapseReport {
        n,
        s,
        e,
        fiber_size: pts.len(),
        max_degree: top,
        chain_exact: params.degree_chain_exact(n),
        chain_bound: params.degree_chain_bound(n),
        in_cs: true,
        residue,
        collapsed,
        points: pts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn small() -> AdversarialParams {
        AdversarialParams::new(vec![1, 7], vec![2, 3], 2).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(AdversarialParams::new(vec![2, 2], vec![1, 1], 1).is_err());
        assert!(AdversarialParams::new(vec![1, 2], vec![1], 1).is_err());
        assert!(AdversarialParams::new(vec![1, 2], vec![0, 1], 1).is_err());
        assert!(AdversarialParams::new(vec![1, 2], vec![1, 1], 3).is_err());
    }

    #[test]
    fn single_term_values() {
        let p = AdversarialParams::new(vec![1], vec![2], 1).unwrap();
        assert!(adversarial_eval(&p, &lp("1 + t")).unwrap().is_zero());
        assert!(adversarial_eval(&p, &lp("0")).unwrap().is_zero());
        // t * x * (x - 1 - t) * (x - 1 - 2t) at x = 2
        assert_eq!(
            adversarial_eval(&p, &lp("2")).unwrap(),
            lp("2*t - 6*t^2 + 4*t^3")
        );
    }

    #[test]
    fn values_on_roots_are_polynomials_and_later_terms_vanish() {
        let p = small();
        for n in 0..2 {
            for (i, j, l) in p.in_range_arguments(n) {
                let x = LaurentPoly::from_terms([
                    (0, Scalar::from_int(i as i64)),
                    (l as i64, Scalar::from_int(j as i64)),
                ]);
                let v = adversarial_eval(&p, &x).unwrap();
                assert!(super::super::nonnegative(&v));
                assert!((n..2).all(|m| p.term(m, &x).is_zero()));
            }
        }
    }

    #[test]
    fn collapse_at_the_first_index() {
        let rep = adversarial_collapse_check(&small(), 0, 4, 1).unwrap();
        assert_eq!(rep.fiber_size, 2);
        assert!(rep.collapsed);
        assert_eq!(rep.residue.rep(), &lp("1"));
    }

    #[test]
    fn collapse_at_the_second_index() {
        let p = small();
        let s = minimal_height(&p, 1).unwrap();
        assert_eq!(s, 23);
        assert_eq!(p.degree_chain_exact(1), 22);
        assert_eq!(p.degree_chain_bound(1), 42);
        for e in 1..=7 {
            let rep = adversarial_collapse_check(&p, 1, s, e).unwrap();
            assert_eq!(rep.fiber_size, 3);
            assert!(rep.collapsed && rep.degrees_within_chain());
            assert_eq!(rep.max_degree, 22);
        }
        assert_eq!(
            adversarial_collapse_check(&p, 1, 22, 1),
            Err(Error::PrecisionGap { degree: 22, s: 22 })
        );
        assert!(matches!(
            adversarial_collapse_check(&p, 1, s, 8),
            Err(Error::Precondition(_))
        ));
    }
}
