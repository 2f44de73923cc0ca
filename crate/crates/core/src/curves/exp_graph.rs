use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::groebner::MultiPoly;
use crate::scalar::Scalar;
use crate::series::{exp_series, LaurentPoly, SeriesValue, TruncSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpOutcome {
    /// `x = 0`, so `exp x = 1` already has height 1.
    Constant,
    /// `exp x` has a nonzero coefficient at `t^degree` with `degree >= s`.
    Tail { degree: i64, coeff: Scalar },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailCertificate {
    pub sample: LaurentPoly,
    pub outcome: ExpOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpGraphReport {
    pub s: u32,
    pub prec: i64,
    pub certificates: Vec<TailCertificate>,
}

/// For each sample `x in t Q[t]` of degree below `s`, finds a coefficient of
/// `exp x` at some degree in `[s, prec)` that is nonzero, so `(x, exp x)` is
/// not a point of height `s`.
pub fn exp_graph_check(s: u32, prec: i64, samples: &[LaurentPoly]) -> Result<ExpGraphReport> {
    if prec <= s as i64 {
        return Err(Error::Precondition(format!(
            "precision {prec} must exceed s = {s}"
        )));
    }
    let mut certificates = Vec::with_capacity(samples.len());
    for x in samples {
        if x.is_zero() {
            certificates.push(TailCertificate {
                sample: x.clone(),
                outcome: ExpOutcome::Constant,
            });
            continue;
        }
        if !x.ord_t().at_least(1) {
            return Err(Error::Domain(format!("exp needs ord_t(x) >= 1, got {x}")));
        }
        if x.degree().is_some_and(|d| d >= s as i64) {
            return Err(Error::Precondition(format!(
                "sample {x} has degree >= s = {s}"
            )));
        }
        let y = exp_series(&TruncSeries::from_poly(x, prec), prec)?;
        let hit = (s as i64..prec).find_map(|k| {
            let c = y.coeff(k).unwrap_or_else(Scalar::zero);
            (!c.is_zero()).then_some((k, c))
        });
        match hit {
            Some((degree, coeff)) => certificates.push(TailCertificate {
                sample: x.clone(),
                outcome: ExpOutcome::Tail { degree, coeff },
            }),
            None => {
                return Err(Error::Inconclusive(format!(
                    "exp({x}) has no nonzero coefficient in [{s}, {prec})"
                )))
            }
        }
    }
    Ok(ExpGraphReport {
        s,
        prec,
        certificates,
    })
}

/// One step of the derivative reduction for a relation `f(x, exp x) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub f: MultiPoly,
    pub g: MultiPoly,
    /// `deg_y f`.
    pub d: u32,
    /// `(deg_y, deg_x of the top y-coefficient)` of `f` and of `g`.
    pub f_shape: (u32, u32),
    pub g_shape: Option<(u32, u32)>,
    /// `g = 0`: the chain stops here.
    pub terminal: bool,
}

impl ReductionStep {
    /// Whether `g` is smaller than `f` in the order of shapes. Recorded, not
    /// guaranteed: total degree need not drop.
    pub fn shape_decreased(&self) -> bool {
        self.g_shape.is_none_or(|g| g < self.f_shape)
    }

    /// `g(t, E) = d/dt f(t, E) - d f(t, E)` for `E = exp t`, compared on all
    /// coefficients below `order`.
    pub fn identity_holds(&self, order: i64) -> Result<bool> {
        let x = SeriesValue::Exact(LaurentPoly::t());
        let e = SeriesValue::Approx(exp_series(
            &TruncSeries::from_poly(&LaurentPoly::t(), order + 1),
            order + 1,
        )?);
        let point = [x, e];
        let fv = self.f.eval_series(&point)?.to_series(order + 1);
        let lhs = &fv.derivative() - &fv.scale(&Scalar::from_int(self.d as i64)).with_prec(order);
        let rhs = self.g.eval_series(&point)?.to_series(order);
        Ok(lhs.with_prec(order) == rhs.with_prec(order))
    }
}

fn shape(f: &MultiPoly) -> Option<(u32, u32)> {
    let d = f.degree_in(1)?;
    let top = &f.coefficients_in(1)[d as usize];
    Some((d, top.degree_in(0).unwrap_or(0)))
}

/// `g = sum_i f_i' y^i + sum_{i<d} (i - d) f_i y^i` for `f = sum_i f_i(x) y^i`.
pub fn transcendence_reduction_step(f: &MultiPoly) -> Result<ReductionStep> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = match f.arity() {
        2 => f.clone(),
        0 | 1 => f.embed(2, &[0, 1][..f.arity()])?,
        a => {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: a,
            })
        }
    };
    let parts = f.coefficients_in(1);
    let d = (parts.len() - 1) as u32;
    let y = MultiPoly::var(2, 1);
    let mut g = MultiPoly::zero(2);
    for (i, fi) in parts.iter().enumerate() {
        let mut coeff = fi.derivative(0);
        if (i as u32) < d {
            coeff = coeff + fi.scale(&Scalar::from_int(i as i64 - d as i64));
        }
        g = g + &coeff * &y.pow(i as u32);
    }
    let f_shape = shape(&f).expect("nonzero");
    let g_shape = shape(&g);
    let terminal = g.is_zero();
    Ok(ReductionStep {
        f,
        g,
        d,
        f_shape,
        g_shape,
        terminal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn tail_certificates() {
        let rep = exp_graph_check(3, 6, &[lp("t")]).unwrap();
        assert_eq!(
            rep.certificates[0].outcome,
            ExpOutcome::Tail {
                degree: 3,
                coeff: Scalar::new(1, 6).unwrap()
            }
        );
        let rep = exp_graph_check(4, 8, &[lp("2*t + t^2")]).unwrap();
        match &rep.certificates[0].outcome {
            ExpOutcome::Tail { degree, coeff } => assert!(*degree == 4 && !coeff.is_zero()),
            other => panic!("unexpected {other:?}"),
        }
        let rep = exp_graph_check(1, 2, &[lp("0")]).unwrap();
        assert_eq!(rep.certificates[0].outcome, ExpOutcome::Constant);
    }

    #[test]
    fn tail_check_errors() {
        assert!(matches!(
            exp_graph_check(3, 3, &[lp("t")]),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            exp_graph_check(3, 5, &[lp("1 + t")]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            exp_graph_check(2, 5, &[lp("t^2")]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn reduction_of_the_diagonal() {
        let step = transcendence_reduction_step(&"x1 - x0".parse().unwrap()).unwrap();
        assert_eq!(
            step.g,
            "x0 - 1"
                .parse::<MultiPoly>()
                .unwrap()
                .embed(2, &[0])
                .unwrap()
        );
        assert_eq!(step.d, 1);
        assert!(step.shape_decreased() && !step.terminal);
        assert!(step.identity_holds(8).unwrap());
    }

    #[test]
    fn reduction_terminates_on_y() {
        let step = transcendence_reduction_step(&"x1".parse().unwrap()).unwrap();
        assert!(step.terminal && step.g.is_zero());
        assert!(step.identity_holds(8).unwrap());
        assert_eq!(
            transcendence_reduction_step(&MultiPoly::zero(2)).unwrap_err(),
            Error::ZeroPolynomial
        );
    }

    #[test]
    fn identity_on_a_mixed_relation() {
        let f: MultiPoly = "x0^2*x1^2 - 3*x0*x1 + x0^3 - 1/2".parse().unwrap();
        let step = transcendence_reduction_step(&f).unwrap();
        assert_eq!(step.d, 2);
        assert!(step.identity_holds(10).unwrap());
        let wrong = ReductionStep {
            g: f.clone(),
            ..step
        };
        assert!(!wrong.identity_holds(10).unwrap());
    }
}
