//! One determinant-method experiment on a sampled fibre of a graph curve.

use countdim_core::determinant::{
    build_matrix, certify_bounds, degree_budget_weighted, det_fraction_free, kernel_hypersurface,
    tr_check, verify_vanishing, Certificate, DetReport, Hypersurface, TrCheckReport,
};
use countdim_core::monomial::{
    dm_parameters, enumerate_grevlex, DegreeMode, DmParameters, ExponentSet,
};
use countdim_core::{LaurentPoly, Result, SeriesValue};

use crate::sample::{GraphCurve, Sampler};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetTrialSpec {
    /// Monomials of degree at most `d` in `(x, y)`.
    pub d: u32,
    /// Points agree with `center` modulo `t^rho`.
    pub rho: u32,
    pub center: LaurentPoly,
    /// Degree bound of the random offsets `u` in `x = center + t^rho u`.
    pub u_degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetTrial {
    pub params: DmParameters,
    pub points: Vec<Vec<LaurentPoly>>,
    pub exponents: ExponentSet,
    pub report: DetReport,
    pub tr: TrCheckReport,
    pub certificate: Certificate,
    /// Present exactly when the determinant vanishes.
    pub hypersurface: Option<Hypersurface>,
    pub vanishes: Option<bool>,
}

impl DetTrial {
    /// `ord(det) >= rho e`.
    pub fn order_bound_holds(&self) -> bool {
        self.certificate.lower_bound_ok
    }
}

/// Samples `D_2(d)` points on `curve` in one residue class mod `t^rho`,
/// evaluates the monomials of degree `<= d`, and runs both determinant
/// bounds. The parametrization is `x -> (x, psi(x))`, so `m = 1`, `n = 2`.
pub fn det_trial(
    curve: &GraphCurve,
    spec: &DetTrialSpec,
    sampler: &mut Sampler,
) -> Result<DetTrial> {
    let params = dm_parameters(2, 1, spec.d)?;
    let xs = sampler.fibre(&spec.center, spec.rho, params.mu as usize, spec.u_degree)?;
    let points = xs
        .iter()
        .map(|x| curve.point(x))
        .collect::<Result<Vec<_>>>()?;
    let exponents = enumerate_grevlex(2, spec.d, DegreeMode::AtMost)?;
    let matrix = build_matrix(&points, &exponents)?;
    let report = det_fraction_free(&matrix)?;
    let base = SeriesValue::Exact(xs[0].clone());
    let pairs: Vec<(SeriesValue, SeriesValue)> = xs[1..]
        .iter()
        .map(|x| (SeriesValue::Exact(x.clone()), base.clone()))
        .collect();
    let tr = tr_check(&curve.psi, &pairs, params.r as u32, 64)?;
    let weights = [0, 1].map(|i| matrix.coordinate_degree(i).max(0) as u64);
    let budget = degree_budget_weighted(&exponents, &weights);
    let certificate = certify_bounds(&report, spec.rho as u64, params.e, budget, tr.pass);
    let (hypersurface, vanishes) = if report.det.is_zero() {
        let h = kernel_hypersurface(&matrix)?;
        let ok = verify_vanishing(&h, &points)?;
        (Some(h), Some(ok))
    } else {
        (None, None)
    };
    Ok(DetTrial {
        params,
        points,
        exponents,
        report,
        tr,
        certificate,
        hypersurface,
        vanishes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use countdim_core::determinant::Verdict;

    #[test]
    fn parabola_conics_vanish() {
        // six points on y = x^2 always lie on the conic itself
        let spec = DetTrialSpec {
            d: 2,
            rho: 2,
            center: "1 + t".parse().unwrap(),
            u_degree: 1,
        };
        let trial = det_trial(&GraphCurve::power(2), &spec, &mut Sampler::new(1)).unwrap();
        assert!(trial.report.det.is_zero());
        assert_eq!(trial.vanishes, Some(true));
        assert_ne!(trial.certificate.verdict, Verdict::Violation);
    }

    #[test]
    fn lines_through_three_points() {
        let spec = DetTrialSpec {
            d: 1,
            rho: 3,
            center: "2".parse().unwrap(),
            u_degree: 1,
        };
        let trial = det_trial(&GraphCurve::power(2), &spec, &mut Sampler::new(4)).unwrap();
        assert_eq!(trial.params.e, 3);
        assert!(!trial.report.det.is_zero());
        assert!(trial.tr.pass && trial.order_bound_holds());
        assert!(trial.report.ord.at_least(9));
    }
}
