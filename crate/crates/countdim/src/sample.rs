//! Seeded samplers. All randomness in the crate flows through [`Sampler`],
//! so a seed fixes every sampled input.

use countdim_core::curves::{adversarial_eval, AdversarialParams};
use countdim_core::determinant::PolyMap;
use countdim_core::groebner::MultiPoly;
use countdim_core::monomial::{enumerate_grevlex, DegreeMode, Exponent};
use countdim_core::{Error, LaurentPoly, Result, Scalar};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::CurveFile;

/// Coefficients are drawn from this set, as `(numerator, denominator)`.
pub const COEFFS: [(i64, i64); 9] = [
    (-3, 1),
    (-2, 1),
    (-1, 1),
    (1, 1),
    (2, 1),
    (3, 1),
    (1, 2),
    (-1, 2),
    (2, 3),
];

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn range(&mut self, lo: u64, hi: u64) -> u64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn choose<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.rng).expect("nonempty choice")
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    /// A nonzero element of the coefficient set.
    pub fn scalar(&mut self) -> Scalar {
        let &(n, d) = self.choose(&COEFFS);
        Scalar::new(n, d).expect("nonzero denominator")
    }

    /// A polynomial with support in `[lo, hi]`; each coefficient is zero
    /// with probability one half.
    pub fn poly(&mut self, lo: i64, hi: i64) -> LaurentPoly {
        LaurentPoly::from_terms(
            (lo..=hi)
                .filter_map(|k| {
                    if self.coin() {
                        Some((k, self.scalar()))
                    } else {
                        None
                    }
                })
                .collect::<Vec<_>>(),
        )
    }

    /// `count` distinct points `center + t^rho u` with `deg u <= u_degree`.
    /// They share the residue class of `center` mod `t^rho` by construction.
    pub fn fibre(
        &mut self,
        center: &LaurentPoly,
        rho: u32,
        count: usize,
        u_degree: u32,
    ) -> Result<Vec<LaurentPoly>> {
        let mut out: Vec<LaurentPoly> = Vec::with_capacity(count);
        let mut attempts = 0;
        while out.len() < count {
            attempts += 1;
            if attempts > 200 * count {
                return Err(Error::Precondition(format!(
                    "could not draw {count} distinct points with deg u <= {u_degree}"
                )));
            }
            let u = self.poly(0, u_degree as i64);
            let x = center + &u.shift(rho as i64);
            if !out.contains(&x) {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// A homogeneous polynomial of the given degree with at most `terms`
    /// terms, never zero.
    pub fn homogeneous(&mut self, arity: usize, degree: u32, terms: usize) -> MultiPoly {
        let monomials = enumerate_grevlex(arity, degree, DegreeMode::Exact).expect("valid arity");
        let all: Vec<Exponent> = monomials.iter().cloned().collect();
        loop {
            let k = self.range(1, terms.max(1) as u64) as usize;
            let picked: Vec<(Exponent, Scalar)> = all
                .choose_multiple(&mut self.rng, k.min(all.len()))
                .cloned()
                .collect::<Vec<_>>()
                .into_iter()
                .map(|e| (e, self.scalar()))
                .collect();
            let p = MultiPoly::from_terms(arity, picked).expect("matching arity");
            if !p.is_zero() {
                return p;
            }
        }
    }
}

/// A curve `y = psi(x)` with `psi` a polynomial over `k[t]`, the setting in
/// which sampled points can be written down exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphCurve {
    pub name: String,
    pub psi: PolyMap,
    /// Points must satisfy `ord_t(x) >= min_ord`.
    pub min_ord: i64,
}

impl GraphCurve {
    pub fn new(name: impl Into<String>, psi: PolyMap, min_ord: i64) -> Self {
        GraphCurve {
            name: name.into(),
            psi,
            min_ord,
        }
    }

    /// `y = x^k`.
    pub fn power(k: usize) -> Self {
        GraphCurve::new(format!("y = x^{k}"), PolyMap::power(k), 0)
    }

    /// `y = E_n(x) = sum_{k<n} x^k / k!` on `t k[t]`.
    pub fn exp_taylor(n: u32) -> Self {
        let coeffs = (0..n as u64)
            .map(|k| LaurentPoly::constant(Scalar::factorial(k).inv().expect("nonzero")))
            .collect();
        GraphCurve::new(format!("y = E_{n}(x)"), PolyMap::new(coeffs), 1)
    }

    /// Solves `F = lambda y - g(x)` for `y`; other curve kinds are already
    /// graphs.
    pub fn from_file(file: &CurveFile) -> Result<Self> {
        match file {
            CurveFile::Algebraic { f } => {
                let f: MultiPoly = f.parse()?;
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
                let parts = f.coefficients_in(1);
                if parts.len() != 2 || !parts[1].is_constant() {
                    return Err(Error::UnsupportedMap(format!(
                        "point sampling needs F = c*y - g(x), got {f}"
                    )));
                }
                let lambda = parts[1].coeff(&Exponent::zero(2));
                let g = parts[0].scale(&-lambda.inv()?);
                let coeffs = g
                    .coefficients_in(0)
                    .iter()
                    .map(|c| LaurentPoly::constant(c.coeff(&Exponent::zero(2))))
                    .collect();
                Ok(GraphCurve::new(format!("{f} = 0"), PolyMap::new(coeffs), 0))
            }
            CurveFile::Exp { terms } => Ok(GraphCurve::exp_taylor(*terms)),
            CurveFile::Adversarial {
                n_seq,
                f_vals,
                truncation,
            } => {
                let params = AdversarialParams::new(n_seq.clone(), f_vals.clone(), *truncation)?;
                let x = PolyMap::power(1);
                let mut psi = PolyMap::new(Vec::new());
                for n in 0..params.truncation() {
                    let big_n = params.n_seq()[n];
                    let mut term =
                        PolyMap::new(vec![LaurentPoly::monomial(Scalar::one(), big_n as i64)])
                            .mul(&PolyMap::power(big_n as usize));
                    for i in 1..=big_n {
                        for l in 1..=big_n {
                            for j in 1..=params.f_vals()[n] {
                                let root = LaurentPoly::from_terms([
                                    (0, Scalar::from_int(i as i64)),
                                    (l as i64, Scalar::from_int(j as i64)),
                                ]);
                                term = term.mul(&x.add(&PolyMap::new(vec![-&root])));
                            }
                        }
                    }
                    psi = psi.add(&term);
                }
                debug_assert_eq!(
                    psi.eval_exact(&LaurentPoly::from_ints(&[2])),
                    adversarial_eval(&params, &LaurentPoly::from_ints(&[2])).expect("in domain")
                );
                Ok(GraphCurve::new("adversarial", psi, 0))
            }
        }
    }

    pub fn point(&self, x: &LaurentPoly) -> Result<Vec<LaurentPoly>> {
        if !x.ord_t().at_least(self.min_ord) {
            return Err(Error::Domain(format!(
                "{} needs ord_t(x) >= {}, got {x}",
                self.name, self.min_ord
            )));
        }
        Ok(vec![x.clone(), self.psi.eval_exact(x)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_fix_the_stream() {
        let draw = |seed| {
            let mut s = Sampler::new(seed);
            (0..5).map(|_| s.poly(0, 3)).collect::<Vec<_>>()
        };
        assert_eq!(draw(11), draw(11));
        assert_ne!(draw(11), draw(12));
    }

    #[test]
    fn fibres_share_a_residue_class() {
        let mut s = Sampler::new(3);
        let center: LaurentPoly = "1 - t".parse().unwrap();
        let pts = s.fibre(&center, 3, 6, 1).unwrap();
        for x in &pts {
            assert!((x - &center).ord_t().at_least(3));
        }
        let mut sorted = pts.clone();
        sorted.sort_by_key(|p| p.to_string());
        sorted.dedup();
        assert_eq!(sorted.len(), 6);
    }

    #[test]
    fn graphs_from_curve_files() {
        let g = GraphCurve::from_file(&CurveFile::Algebraic {
            f: "2*x1 - x0^2 + 4".into(),
        })
        .unwrap();
        let x: LaurentPoly = "2 + t".parse().unwrap();
        assert_eq!(g.point(&x).unwrap()[1], "2*t + 1/2*t^2".parse().unwrap());
        assert!(GraphCurve::from_file(&CurveFile::Algebraic {
            f: "x1^2 - x0".into()
        })
        .is_err());
        let e = GraphCurve::from_file(&CurveFile::Exp { terms: 3 }).unwrap();
        assert_eq!(
            e.point(&LaurentPoly::t()).unwrap()[1],
            "1 + t + 1/2*t^2".parse().unwrap()
        );
        assert!(e.point(&LaurentPoly::one()).is_err());
        let a = GraphCurve::from_file(&CurveFile::Adversarial {
            n_seq: vec![1],
            f_vals: vec![2],
            truncation: 1,
        })
        .unwrap();
        assert_eq!(
            a.point(&"2".parse().unwrap()).unwrap()[1],
            "2*t - 6*t^2 + 4*t^3".parse().unwrap()
        );
    }

    #[test]
    fn homogeneous_samples() {
        let mut s = Sampler::new(5);
        for _ in 0..20 {
            let p = s.homogeneous(3, 2, 3);
            assert!(p.is_homogeneous() && p.total_degree() == Some(2));
        }
    }
}
