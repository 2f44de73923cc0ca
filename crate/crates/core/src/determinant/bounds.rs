use core::fmt;

use crate::error::Result;
use crate::monomial::ExponentSet;
use crate::series::{LaurentPoly, Valuation};

use super::matrix::{bareiss_det, PointMatrix};

/// The determinant of a square point matrix with its `t`-adic order and
/// degree (`None` for the zero determinant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetReport {
    pub det: LaurentPoly,
    pub ord: Valuation,
    pub deg: Option<i64>,
}

pub fn det_fraction_free(m: &PointMatrix) -> Result<DetReport> {
    let det = bareiss_det(m.entries())?;
    let ord = det.ord_t();
    let deg = det.degree();
    Ok(DetReport { det, ord, deg })
}

/// `(s - 1) * sum_j |e_j|`: the degree of the determinant when every
/// coordinate has degree below `s`.
pub fn degree_budget(exponents: &ExponentSet, s: u64) -> u64 {
    let v: u64 = exponents.iter().map(|e| e.total() as u64).sum();
    s.saturating_sub(1) * v
}

/// Degree budget for points `(1, x_1, ..., x_n)` in projective coordinates:
/// the constant coordinate 0 contributes nothing.
pub fn degree_budget_projective(exponents: &ExponentSet, s: u64) -> u64 {
    let v: u64 = (1..exponents.arity())
        .map(|i| exponents.coordinate_sum(i))
        .sum();
    s.saturating_sub(1) * v
}

/// `sum_j sum_i e_{j,i} w_i` where coordinate `i` has degree at most `w_i`.
pub fn degree_budget_weighted(exponents: &ExponentSet, weights: &[u64]) -> u64 {
    (0..exponents.arity())
        .map(|i| exponents.coordinate_sum(i) * weights[i])
        .sum()
}

/// Outcome of comparing the two determinant bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `rho * e` exceeds the degree budget, so the determinant must vanish,
    /// and it does.
    ForcedZero,
    Consistent,
    /// A bound fails; some hypothesis does not hold.
    Violation,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ForcedZero => "forced_zero",
            Verdict::Consistent => "consistent",
            Verdict::Violation => "violation",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub verdict: Verdict,
    /// `ord(det) >= rho * e`.
    pub lower_bound_ok: bool,
    /// `deg(det) <= degree_budget`.
    pub upper_bound_ok: bool,
    pub rho_e: u64,
    pub degree_budget: u64,
    /// Whether the caller vouched for the ball and `T_r` hypotheses, which
    /// make the lower bound mandatory.
    pub hypotheses: bool,
}

/// Compares `ord(det) >= rho e` with `deg(det) <= degree_budget`.
///
/// The degree bound holds unconditionally for points of bounded height; the
/// order bound only when all points share a residue class mod `t^rho` and
/// the maps are `T_r`, which the caller asserts through `hypotheses`.
pub fn certify_bounds(
    report: &DetReport,
    rho: u64,
    e: u64,
    degree_budget: u64,
    hypotheses: bool,
) -> Certificate {
    let rho_e = rho * e;
    let lower_bound_ok = report.ord.at_least(rho_e as i64);
    let upper_bound_ok = report.deg.is_none_or(|d| d <= degree_budget as i64);
    let zero = report.det.is_zero();
    let verdict = if !upper_bound_ok || (hypotheses && !lower_bound_ok) {
        Verdict::Violation
    } else if rho_e > degree_budget && zero {
        Verdict::ForcedZero
    } else {
        Verdict::Consistent
    };
    Certificate {
        verdict,
        lower_bound_ok,
        upper_bound_ok,
        rho_e,
        degree_budget,
        hypotheses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::determinant::build_matrix;
    use crate::monomial::{dm_parameters, enumerate_grevlex, DegreeMode};
    use alloc::vec;
    use alloc::vec::Vec;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn budgets() {
        let d2 = enumerate_grevlex(2, 2, DegreeMode::AtMost).unwrap();
        let p = dm_parameters(2, 1, 2).unwrap();
        assert_eq!(degree_budget(&d2, 2), p.v);
        assert_eq!(degree_budget(&d2, 1), 0);
        let d2h = enumerate_grevlex(3, 2, DegreeMode::Exact).unwrap();
        assert_eq!(
            degree_budget_projective(&d2h, 3),
            2 * (d2h.coordinate_sum(1) + d2h.coordinate_sum(2))
        );
        assert_eq!(degree_budget_weighted(&d2, &[1, 2]), 4 + 2 * 4);
    }

    #[test]
    fn forced_zero_on_parabola() {
        let d2 = enumerate_grevlex(2, 2, DegreeMode::AtMost).unwrap();
        let pts: Vec<Vec<LaurentPoly>> = ["1", "2", "3", "4", "5", "6"]
            .iter()
            .map(|x| vec![lp(x), lp(x).pow(2)])
            .collect();
        let rep = det_fraction_free(&build_matrix(&pts, &d2).unwrap()).unwrap();
        assert_eq!(rep.ord, Valuation::Infinite);
        let cert = certify_bounds(&rep, 1, 15, 8, true);
        assert_eq!(cert.verdict, Verdict::ForcedZero);
    }

    #[test]
    fn consistent_nonzero_determinant() {
        // x = t + c t^2 for three c: one ball of radius |t|, e = 3 for d = 1
        let d1 = enumerate_grevlex(2, 1, DegreeMode::AtMost).unwrap();
        let pts: Vec<Vec<LaurentPoly>> = ["t", "t + t^2", "t + 2*t^2"]
            .iter()
            .map(|x| vec![lp(x), &lp(x).pow(2) + &lp(x).pow(3)])
            .collect();
        let m = build_matrix(&pts, &d1).unwrap();
        let rep = det_fraction_free(&m).unwrap();
        assert!(!rep.det.is_zero());
        let budget = degree_budget_weighted(
            &d1,
            &[m.coordinate_degree(0) as u64, m.coordinate_degree(1) as u64],
        );
        let cert = certify_bounds(&rep, 1, 3, budget, true);
        assert!(cert.lower_bound_ok && cert.upper_bound_ok);
        assert_eq!(cert.verdict, Verdict::Consistent);
    }

    #[test]
    fn points_in_different_balls_violate_the_lower_bound() {
        let d1 = enumerate_grevlex(2, 1, DegreeMode::AtMost).unwrap();
        let pts: Vec<Vec<LaurentPoly>> = ["0", "1", "2"]
            .iter()
            .map(|x| vec![lp(x), lp(x).pow(2)])
            .collect();
        let rep = det_fraction_free(&build_matrix(&pts, &d1).unwrap()).unwrap();
        assert_eq!(rep.ord, Valuation::Finite(0));
        let cert = certify_bounds(&rep, 1, 3, 10, true);
        assert_eq!(cert.verdict, Verdict::Violation);
        assert!(!cert.lower_bound_ok);
        assert_eq!(
            certify_bounds(&rep, 1, 3, 10, false).verdict,
            Verdict::Consistent
        );
    }
}
