//! Desk-scale curves in `k((t))^2`, their bounded-height points, and the
//! counting-dimension experiments built on them.
//!
//! A point of height at most `s` is a pair `(x, y)` of polynomials in `t`
//! of degree below `s`. For an algebraic curve `F(x, y) = 0` the coefficient
//! vectors of such pairs form an affine variety [`XsIdeal`]; fibres of a
//! witness map over residue classes are sub-varieties of it.

mod adversarial;
mod exp_graph;
mod witness;
mod xs;

use alloc::format;

use crate::error::{Error, Result};
use crate::groebner::MultiPoly;
use crate::series::{exp_series, LaurentPoly, TruncSeries, Valuation};

pub use adversarial::{
    adversarial_collapse_check, adversarial_eval, minimal_height, AdversarialParams, CollapseReport,
};
pub use exp_graph::{
    exp_graph_check, transcendence_reduction_step, ExpGraphReport, ExpOutcome, ReductionStep,
    TailCertificate,
};
pub use witness::{
    cdim_witness_check, CDimBound, CDimWitnessReport, FiberBound, FiberMode, WitnessMap,
};
pub use xs::{xs_dimension, xs_ideal, XsIdeal};

/// Named series whose graph is a transcendental curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesGenerator {
    /// `exp`, defined on `t k[[t]]`.
    Exp,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesGraph {
    pub generator: SeriesGenerator,
    /// Arguments must have `ord_t` at least this.
    pub min_valuation: i64,
}

impl SeriesGraph {
    pub fn exp() -> Self {
        SeriesGraph {
            generator: SeriesGenerator::Exp,
            min_valuation: 1,
        }
    }

    pub fn eval(&self, x: &LaurentPoly, prec: i64) -> Result<TruncSeries> {
        if !x.ord_t().at_least(self.min_valuation) {
            return Err(Error::Domain(format!(
                "argument must have ord_t >= {}",
                self.min_valuation
            )));
        }
        match self.generator {
            SeriesGenerator::Exp => exp_series(&TruncSeries::from_poly(x, prec), prec),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveSpec {
    /// `F(x, y) = 0` with `x = x0`, `y = x1`.
    AlgebraicPlane(MultiPoly),
    SeriesGraph(SeriesGraph),
    /// Graph of the truncated adversarial series.
    Adversarial(AdversarialParams),
}

impl CurveSpec {
    /// Checks that `f` is a non-constant polynomial in at most two variables
    /// and lifts it to the plane.
    pub fn algebraic(f: MultiPoly) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if f.is_constant() {
            return Err(Error::Domain(
                "a constant polynomial defines no curve".into(),
            ));
        }
        let f = match f.arity() {
            2 => f,
            0 | 1 => f.embed(2, &[0, 1][..f.arity()])?,
            a => {
                return Err(Error::ArityMismatch {
                    expected: 2,
                    found: a,
                })
            }
        };
        Ok(CurveSpec::AlgebraicPlane(f))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CurveSpec::AlgebraicPlane(_) => "algebraic",
            CurveSpec::SeriesGraph(_) => "series_graph",
            CurveSpec::Adversarial(_) => "adversarial",
        }
    }

    /// Exact membership of `(x, y)` in the curve.
    pub fn contains(&self, x: &LaurentPoly, y: &LaurentPoly) -> Result<bool> {
        match self {
            CurveSpec::AlgebraicPlane(f) => Ok(f.eval_laurent(&[x.clone(), y.clone()])?.is_zero()),
            CurveSpec::Adversarial(p) => Ok(&adversarial_eval(p, x)? == y),
            CurveSpec::SeriesGraph(g) => {
                // The value of a nonzero argument is never a polynomial, so a
                // disagreement always shows up at finite precision.
                let top = y.degree().unwrap_or(0).max(0);
                let mut prec = top + 4;
                while prec <= 4 * (top + 4) {
                    let v = g.eval(x, prec)?;
                    if !v.agrees_with(&TruncSeries::from_poly(y, prec)) {
                        return Ok(false);
                    }
                    if x.is_zero() {
                        return Ok(true);
                    }
                    prec *= 2;
                }
                Err(Error::Inconclusive(
                    "series membership undecided at the precision cap".into(),
                ))
            }
        }
    }
}

pub(crate) fn nonnegative(x: &LaurentPoly) -> bool {
    x.ord_t() >= Valuation::Finite(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn algebraic_spec_validation() {
        assert_eq!(
            CurveSpec::algebraic(MultiPoly::zero(2)),
            Err(Error::ZeroPolynomial)
        );
        assert!(CurveSpec::algebraic("3".parse().unwrap()).is_err());
        let line = CurveSpec::algebraic("x0 - 1".parse().unwrap()).unwrap();
        match &line {
            CurveSpec::AlgebraicPlane(f) => assert_eq!(f.arity(), 2),
            _ => unreachable!(),
        }
        assert!(CurveSpec::algebraic("x2".parse().unwrap()).is_err());
    }

    #[test]
    fn membership() {
        let parabola = CurveSpec::algebraic("x1 - x0^2".parse().unwrap()).unwrap();
        assert!(parabola
            .contains(&lp("1 + t"), &lp("1 + 2*t + t^2"))
            .unwrap());
        assert!(!parabola.contains(&lp("t"), &lp("t")).unwrap());
        let exp = CurveSpec::SeriesGraph(SeriesGraph::exp());
        assert!(exp.contains(&lp("0"), &lp("1")).unwrap());
        assert!(!exp.contains(&lp("t"), &lp("1 + t + 1/2*t^2")).unwrap());
        assert!(exp.contains(&lp("1"), &lp("1")).is_err());
    }
}
