//! Serializable views of library results. Rationals and polynomials are
//! printed in their canonical text forms (`p/q`, `c*t^k`), never as floats.

use countdim_core::curves::{
    CDimWitnessReport, CollapseReport, ExpGraphReport, ExpOutcome, FiberBound, ReductionStep,
};
use countdim_core::groebner::HilbertRecord;
use countdim_core::monomial::VeRow;
use countdim_core::LaurentPoly;
use serde::Serialize;

use crate::detmethod::DetTrial;

fn pair(p: &[LaurentPoly]) -> Vec<String> {
    p.iter().map(ToString::to_string).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ParamsRow {
    pub d: u32,
    #[serde(rename = "V")]
    pub v: u64,
    pub e: u64,
    pub ratio_num: String,
    pub ratio_den: String,
}

impl From<&VeRow> for ParamsRow {
    fn from(row: &VeRow) -> Self {
        ParamsRow {
            d: row.d,
            v: row.v,
            e: row.e,
            ratio_num: row.ratio.numer().to_string(),
            ratio_den: row.ratio.denom().to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertRow {
    pub r: u32,
    #[serde(rename = "H")]
    pub h: u64,
    pub sigma: Vec<u64>,
    pub identity_holds: bool,
    /// `sigma_i / (r H)`; empty when `H(r) = 0`.
    pub a: Vec<String>,
}

impl HilbertRow {
    pub fn new(rec: &HilbertRecord, a: Vec<String>) -> Self {
        HilbertRow {
            r: rec.r,
            h: rec.h,
            sigma: rec.sigma.clone(),
            identity_holds: rec.identity_holds(),
            a,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertReport {
    pub generators: Vec<String>,
    pub groebner_basis: Vec<String>,
    pub records: Vec<HilbertRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateView {
    pub verdict: String,
    pub lower_bound_ok: bool,
    pub upper_bound_ok: bool,
    pub rho_e: u64,
    pub degree_budget: u64,
    pub hypotheses: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TermView {
    pub exponent: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct HypersurfaceView {
    pub degree: u32,
    pub terms: Vec<TermView>,
    pub vanishes_on_points: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DetTrialView {
    pub curve: String,
    pub d: u32,
    pub rho: u32,
    pub mu: u64,
    pub r: u64,
    pub e: u64,
    pub exponents: Vec<Vec<u32>>,
    pub points: Vec<Vec<String>>,
    pub det: String,
    pub ord: String,
    pub deg: Option<i64>,
    pub tr_pass: bool,
    pub tr_worst_margin: String,
    pub certificate: CertificateView,
    pub hypersurface: Option<HypersurfaceView>,
}

impl DetTrialView {
    pub fn new(curve: &str, rho: u32, t: &DetTrial) -> Self {
        let c = &t.certificate;
        DetTrialView {
            curve: curve.to_string(),
            d: t.params.d,
            rho,
            mu: t.params.mu,
            r: t.params.r,
            e: t.params.e,
            exponents: t.exponents.iter().map(|e| e.entries().to_vec()).collect(),
            points: t.points.iter().map(|p| pair(p)).collect(),
            det: t.report.det.to_string(),
            ord: t.report.ord.to_string(),
            deg: t.report.deg,
            tr_pass: t.tr.pass,
            tr_worst_margin: t.tr.worst_margin.to_string(),
            certificate: CertificateView {
                verdict: c.verdict.as_str().to_string(),
                lower_bound_ok: c.lower_bound_ok,
                upper_bound_ok: c.upper_bound_ok,
                rho_e: c.rho_e,
                degree_budget: c.degree_budget,
                hypotheses: c.hypotheses,
            },
            hypersurface: t.hypersurface.as_ref().map(|h| HypersurfaceView {
                degree: h.degree(),
                terms: h
                    .support()
                    .map(|(e, c)| TermView {
                        exponent: e.entries().to_vec(),
                        coeff: c.to_string(),
                    })
                    .collect(),
                vanishes_on_points: t.vanishes == Some(true),
            }),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct XsRow {
    pub s: u32,
    /// The dimension, or `budget` when the Gröbner budget ran out.
    pub dim: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CdimView {
    pub s: u32,
    pub map: String,
    pub d: u32,
    pub e: u32,
    pub xs_dimension: i64,
    /// `null` when some fibre is infinite.
    pub max_finite_fiber: Option<u64>,
    pub infinite: bool,
    pub infinite_fiber_point: Option<Vec<String>>,
}

impl From<&CDimWitnessReport> for CdimView {
    fn from(r: &CDimWitnessReport) -> Self {
        let max_finite_fiber = match r.fiber {
            FiberBound::Finite(n) => Some(n),
            FiberBound::Infinite => None,
        };
        CdimView {
            s: r.s,
            map: r.map.to_string(),
            d: r.d,
            e: r.e,
            xs_dimension: r.xs_dimension,
            max_finite_fiber,
            infinite: r.fiber.is_infinite(),
            infinite_fiber_point: r
                .infinite_fiber_point
                .as_ref()
                .map(|cs| cs.iter().map(ToString::to_string).collect()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CollapseView {
    pub n: usize,
    pub s: u32,
    pub e: u32,
    pub points: Vec<Vec<String>>,
    pub max_degree: i64,
    pub chain_exact: u64,
    pub chain_bound: u64,
    pub degrees_within_chain: bool,
    pub in_cs: bool,
    pub residue: String,
    pub collapsed: bool,
    pub fiber_size: usize,
}

impl From<&CollapseReport> for CollapseView {
    fn from(r: &CollapseReport) -> Self {
        CollapseView {
            n: r.n,
            s: r.s,
            e: r.e,
            points: r
                .points
                .iter()
                .map(|(x, y)| pair(&[x.clone(), y.clone()]))
                .collect(),
            max_degree: r.max_degree,
            chain_exact: r.chain_exact,
            chain_bound: r.chain_bound,
            degrees_within_chain: r.degrees_within_chain(),
            in_cs: r.in_cs,
            residue: r.residue.to_string(),
            collapsed: r.collapsed,
            fiber_size: r.fiber_size,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AdversarialView {
    /// In-range arguments `i + j t^l` checked, per outer index.
    pub arguments_checked: Vec<usize>,
    pub values_polynomial: bool,
    pub collapse: Vec<CollapseView>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TailView {
    pub sample: String,
    pub outcome: &'static str,
    pub degree: Option<i64>,
    pub coeff: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionView {
    pub f: String,
    pub g: String,
    pub d: u32,
    pub f_shape: (u32, u32),
    pub g_shape: Option<(u32, u32)>,
    pub shape_decreased: bool,
    pub terminal: bool,
    pub identity_order: i64,
    pub identity_holds: bool,
}

impl ReductionView {
    pub fn new(step: &ReductionStep, order: i64, holds: bool) -> Self {
        ReductionView {
            f: step.f.to_string(),
            g: step.g.to_string(),
            d: step.d,
            f_shape: step.f_shape,
            g_shape: step.g_shape,
            shape_decreased: step.shape_decreased(),
            terminal: step.terminal,
            identity_order: order,
            identity_holds: holds,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpGraphView {
    pub s: u32,
    pub prec: i64,
    pub certificates: Vec<TailView>,
    pub reduction: Option<ReductionView>,
}

impl ExpGraphView {
    pub fn new(rep: &ExpGraphReport, reduction: Option<ReductionView>) -> Self {
        ExpGraphView {
            s: rep.s,
            prec: rep.prec,
            certificates: rep
                .certificates
                .iter()
                .map(|c| match &c.outcome {
                    ExpOutcome::Constant => TailView {
                        sample: c.sample.to_string(),
                        outcome: "constant",
                        degree: None,
                        coeff: None,
                    },
                    ExpOutcome::Tail { degree, coeff } => TailView {
                        sample: c.sample.to_string(),
                        outcome: "tail",
                        degree: Some(*degree),
                        coeff: Some(coeff.to_string()),
                    },
                })
                .collect(),
            reduction,
        }
    }
}

/// Renders rows as CSV with a header line.
pub fn to_csv<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("flat rows serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 output")
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}
