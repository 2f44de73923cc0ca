use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::monomial::{enumerate_grevlex, DegreeMode, Exponent, ExponentSet};
use crate::scalar::Scalar;

use super::IdealBasis;

/// Degree-`r` exponents outside `LT(I)`, in increasing order.
pub fn standard_monomials(gb: &IdealBasis, r: u32) -> Result<ExponentSet> {
    if !gb.is_groebner() {
        return Err(Error::NotGroebner);
    }
    let leads = gb.leading_exponents();
    let all = enumerate_grevlex(gb.arity(), r, DegreeMode::Exact)?;
    let kept: Vec<Exponent> = all
        .iter()
        .filter(|e| !leads.iter().any(|l| l.divides(e)))
        .cloned()
        .collect();
    ExponentSet::new(gb.arity(), kept)
}

/// `H_I(r)` together with the coordinate sums `sigma_i(r)` over the
/// degree-`r` standard monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertRecord {
    pub r: u32,
    pub h: u64,
    pub sigma: Vec<u64>,
}

impl HilbertRecord {
    /// `r * H(r) == sum_i sigma_i(r)`.
    pub fn identity_holds(&self) -> bool {
        self.r as u64 * self.h == self.sigma.iter().sum::<u64>()
    }
}

fn require_homogeneous_gb(gb: &IdealBasis) -> Result<()> {
    if !gb.is_groebner() {
        return Err(Error::NotGroebner);
    }
    if !gb.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    Ok(())
}

pub fn hilbert_fn(gb: &IdealBasis, r: u32) -> Result<HilbertRecord> {
    require_homogeneous_gb(gb)?;
    let std = standard_monomials(gb, r)?;
    let sigma = (0..gb.arity()).map(|i| std.coordinate_sum(i)).collect();
    let rec = HilbertRecord {
        r,
        h: std.len() as u64,
        sigma,
    };
    debug_assert!(rec.identity_holds());
    Ok(rec)
}

/// A linear fit `H(r) = leading * r + constant` over a window of degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPolyReport {
    pub values: Vec<(u32, u64)>,
    pub leading: Scalar,
    pub constant: Scalar,
    /// Degree of the generator when the ideal is principal.
    pub curve_degree: Option<u32>,
    pub leading_matches_degree: bool,
}

/// Checks that `H_I` is linear on `[r_min, r_max]` and reads off the fit.
/// For a plane curve the slope is its degree.
pub fn hilbert_poly_check(gb: &IdealBasis, r_min: u32, r_max: u32) -> Result<HilbertPolyReport> {
    require_homogeneous_gb(gb)?;
    if r_max <= r_min {
        return Err(Error::Precondition("need r_min < r_max".into()));
    }
    let values: Vec<(u32, u64)> = (r_min..=r_max)
        .map(|r| hilbert_fn(gb, r).map(|rec| (r, rec.h)))
        .collect::<Result<_>>()?;
    let step = values[1].1 as i64 - values[0].1 as i64;
    for w in values.windows(2).skip(1) {
        if w[1].1 as i64 - w[0].1 as i64 != step {
            return Err(Error::NonPolynomialRange { r: w[1].0 as u64 });
        }
    }
    let leading = Scalar::from_int(step);
    let constant = Scalar::from_int(values[0].1 as i64) - &leading * Scalar::from_int(r_min as i64);
    let curve_degree = match gb.generators() {
        [g] => g.total_degree(),
        _ => None,
    };
    let leading_matches_degree =
        curve_degree.is_some_and(|d| leading == Scalar::from_int(d as i64));
    Ok(HilbertPolyReport {
        values,
        leading,
        constant,
        curve_degree,
        leading_matches_degree,
    })
}

/// `sigma_i(r) / (r H(r))`, exactly.
pub fn a_estimate(gb: &IdealBasis, i: usize, r: u32) -> Result<Scalar> {
    if i >= gb.arity() {
        return Err(Error::InvalidArity(i));
    }
    Ok(a_estimates(gb, r)?.swap_remove(i))
}

/// All ratios `sigma_i(r) / (r H(r))`; they sum to exactly one.
pub fn a_estimates(gb: &IdealBasis, r: u32) -> Result<Vec<Scalar>> {
    if r == 0 {
        return Err(Error::Precondition("r must be at least 1".into()));
    }
    let rec = hilbert_fn(gb, r)?;
    if rec.h == 0 {
        return Err(Error::ZeroHilbert { r: r as u64 });
    }
    let denom = Scalar::from_int(r as i64 * rec.h as i64);
    Ok(rec
        .sigma
        .iter()
        .map(|&s| Scalar::from_int(s as i64) / &denom)
        .collect())
}

/// Krull dimension of `k[x]/I`: the largest set of variables containing the
/// support of no leading monomial. `-1` for the unit ideal.
pub fn variety_dimension(basis: &IdealBasis) -> Result<i64> {
    let gb = basis.groebner()?;
    Ok(dimension_of_groebner(&gb))
}

fn dimension_of_groebner(gb: &IdealBasis) -> i64 {
    if gb.is_unit() {
        return -1;
    }
    assert!(
        gb.arity() <= 64,
        "dimension search supports at most 64 variables"
    );
    let mut masks: Vec<u64> = gb
        .leading_exponents()
        .iter()
        .map(Exponent::support_mask)
        .collect();
    masks.sort_unstable();
    masks.dedup();
    let mut best = 0;
    independent_search(&masks, gb.arity(), 0, 0, 0, &mut best);
    best as i64
}

fn independent_search(
    masks: &[u64],
    n: usize,
    idx: usize,
    chosen: u64,
    size: usize,
    best: &mut usize,
) {
    if size + (n - idx) <= *best {
        return;
    }
    if idx == n {
        *best = size;
        return;
    }
    let with = chosen | (1 << idx);
    if !masks.iter().any(|&m| m & !with == 0) {
        independent_search(masks, n, idx + 1, with, size + 1, best);
    }
    independent_search(masks, n, idx + 1, chosen, size, best);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{buchberger, MultiPoly};
    use crate::monomial::count_atmost;
    use alloc::vec;

    fn gb(gens: &[&str], names: &[&str]) -> IdealBasis {
        let polys = gens
            .iter()
            .map(|s| MultiPoly::parse_with(s, names).unwrap())
            .collect();
        buchberger(&IdealBasis::new(names.len(), polys).unwrap(), 10_000).unwrap()
    }

    const XYZ: &[&str] = &["x0", "x1", "x2"];

    #[test]
    fn standard_monomial_examples() {
        let i = gb(&["x2^2"], XYZ);
        let std = standard_monomials(&i, 2).unwrap();
        assert_eq!(std.len(), 5);
        assert!(std.iter().all(|e| e.get(2) <= 1));
        assert!(standard_monomials(&gb(&["1"], XYZ), 2).unwrap().is_empty());
        assert_eq!(standard_monomials(&gb(&[], XYZ), 3).unwrap().len(), 10);
        let raw = IdealBasis::new(3, vec![]).unwrap();
        assert_eq!(standard_monomials(&raw, 1), Err(Error::NotGroebner));
    }

    #[test]
    fn hilbert_records() {
        let conic = gb(&["x0*x1 - x2^2"], XYZ);
        assert_eq!(hilbert_fn(&conic, 3).unwrap().h, 7);
        let i = gb(&["x2^2"], XYZ);
        for r in 1..8u64 {
            let rec = hilbert_fn(&i, r as u32).unwrap();
            assert_eq!(rec.h, 2 * r + 1);
            assert_eq!(rec.sigma, vec![r * r, r * r, r]);
            assert!(rec.identity_holds());
        }
        let zero = hilbert_fn(&gb(&[], XYZ), 1).unwrap();
        assert_eq!((zero.h, zero.sigma), (3, vec![1, 1, 1]));
        let affine = gb(&["x0 - 1"], XYZ);
        assert_eq!(hilbert_fn(&affine, 1), Err(Error::NotHomogeneous));
    }

    #[test]
    fn principal_curves_follow_the_closed_form() {
        for (f, d) in [
            ("x0 + x1 - x2", 1i64),
            ("x0*x1 - x2^2", 2),
            ("x1^2*x2 - x0^3 - x2^3", 3),
        ] {
            let i = gb(&[f], XYZ);
            for r in 0..10i64 {
                let expected = count_atmost(2, r).unwrap() - count_atmost(2, r - d).unwrap();
                assert_eq!(
                    hilbert_fn(&i, r as u32).unwrap().h,
                    expected,
                    "{f} at r={r}"
                );
            }
            let fit = hilbert_poly_check(&i, d as u32, d as u32 + 6).unwrap();
            assert_eq!(fit.leading, Scalar::from_int(d));
            assert!(fit.leading_matches_degree);
        }
        let line = hilbert_poly_check(&gb(&["x2"], XYZ), 0, 5).unwrap();
        assert_eq!(
            (line.leading, line.constant),
            (Scalar::one(), Scalar::one())
        );
    }

    #[test]
    fn non_linear_window_is_rejected() {
        let err = hilbert_poly_check(&gb(&[], XYZ), 1, 4).unwrap_err();
        assert!(matches!(err, Error::NonPolynomialRange { .. }));
    }

    #[test]
    fn a_ratios_sum_to_one() {
        let i = gb(&["x2^2"], XYZ);
        let r = 6;
        let a = a_estimates(&i, r).unwrap();
        let rh = Scalar::from_int(6 * 13);
        assert_eq!(
            a,
            vec![
                Scalar::from_int(36) / &rh,
                Scalar::from_int(36) / &rh,
                Scalar::from_int(6) / &rh
            ]
        );
        let total = a.iter().fold(Scalar::zero(), |acc, x| acc + x);
        assert_eq!(total, Scalar::one());
        let third = Scalar::new(1, 3).unwrap();
        assert!(a_estimates(&gb(&[], XYZ), 4)
            .unwrap()
            .iter()
            .all(|x| *x == third));
        assert_eq!(
            a_estimate(&gb(&["1"], XYZ), 0, 2),
            Err(Error::ZeroHilbert { r: 2 })
        );
        let conic = gb(&["x0*x1 - x2^2"], XYZ);
        let sum = a_estimates(&conic, 10)
            .unwrap()
            .iter()
            .fold(Scalar::zero(), |acc, x| acc + x);
        assert_eq!(sum, Scalar::one());
    }

    #[test]
    fn dimensions() {
        assert_eq!(
            variety_dimension(&gb(&["y - x^2"], &["x", "y"])).unwrap(),
            1
        );
        assert_eq!(variety_dimension(&gb(&["x", "y"], &["x", "y"])).unwrap(), 0);
        assert_eq!(variety_dimension(&gb(&["1"], &["x", "y"])).unwrap(), -1);
        assert_eq!(variety_dimension(&gb(&[], &["x", "y"])).unwrap(), 2);
        assert_eq!(variety_dimension(&gb(&["x*y"], &["x", "y"])).unwrap(), 1);
        assert_eq!(
            variety_dimension(&gb(&["x*z", "y*z"], &["x", "y", "z"])).unwrap(),
            2
        );
    }
}
