use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::groebner::{variety_dimension, IdealBasis, MultiPoly};
use crate::monomial::Exponent;
use crate::scalar::Scalar;
use crate::series::LaurentPoly;

use super::CurveSpec;

/// The ideal of coefficient vectors `(a_0, ..., a_{s-1}, b_0, ..., b_{s-1})`
/// with `F(sum a_i t^i, sum b_j t^j) = 0`. Variable `i < s` is `a_i`,
/// variable `s + j` is `b_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XsIdeal {
    pub s: u32,
    pub vars: Vec<String>,
    pub basis: IdealBasis,
}

impl XsIdeal {
    /// The pair `(x, y)` encoded by a coefficient vector.
    pub fn point_of(&self, coords: &[Scalar]) -> Result<(LaurentPoly, LaurentPoly)> {
        let s = self.s as usize;
        if coords.len() != 2 * s {
            return Err(Error::ArityMismatch {
                expected: 2 * s,
                found: coords.len(),
            });
        }
        let x = LaurentPoly::from_dense(0, coords[..s].iter().cloned());
        let y = LaurentPoly::from_dense(0, coords[s..].iter().cloned());
        Ok((x, y))
    }

    /// The coefficient vector of `(x, y)`; fails unless both are polynomials
    /// of degree below `s`.
    pub fn coords_of(&self, x: &LaurentPoly, y: &LaurentPoly) -> Result<Vec<Scalar>> {
        let s = self.s as i64;
        for p in [x, y] {
            if !super::nonnegative(p) || p.degree().is_some_and(|d| d >= s) {
                return Err(Error::Domain(format!("{p} is not of height at most {s}")));
            }
        }
        let mut out = x.dense(0, s - 1);
        out.extend(y.dense(0, s - 1));
        Ok(out)
    }
}

/// `g(x(t), y(t))` for `x = sum a_i t^i`, `y = sum b_j t^j`, as its list of
/// `t`-coefficients. The `a` and `b` variables sit at `offset..offset + 2s`
/// in a ring of `arity` variables.
pub(crate) fn expand_in_t(
    g: &MultiPoly,
    s: usize,
    arity: usize,
    offset: usize,
) -> Result<Vec<MultiPoly>> {
    if g.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: g.arity(),
        });
    }
    // work in the ring with one extra variable standing for t
    let tv = arity;
    let series = |base: usize| {
        let mut acc = MultiPoly::zero(arity + 1);
        for i in 0..s {
            let mut e = vec![0u32; arity + 1];
            e[base + i] = 1;
            e[tv] = i as u32;
            acc.add_term(Exponent::new(e), &Scalar::one());
        }
        acc
    };
    let x = series(offset);
    let y = series(offset + s);
    let expanded = g.substitute(&[x, y])?;
    Ok(expanded
        .coefficients_in(tv)
        .iter()
        .map(|c| drop_last(c, arity))
        .collect())
}

fn drop_last(p: &MultiPoly, arity: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(arity);
    for (e, c) in p.terms() {
        out.add_term(Exponent::new(e.entries()[..arity].to_vec()), c);
    }
    out
}

/// Repeatedly solves a generator `lambda v + h` (`lambda` constant, `h` free
/// of `v`) for a variable `v >= protected` and substitutes it away, then
/// renumbers the surviving variables in order. The variety is isomorphic
/// to the original by projection, so dimensions and point counts agree.
pub(crate) fn eliminate_linear(
    mut gens: Vec<MultiPoly>,
    arity: usize,
    protected: usize,
) -> (Vec<MultiPoly>, usize) {
    let mut gone = vec![false; arity];
    loop {
        let pick = gens.iter().enumerate().find_map(|(k, g)| {
            (protected..arity).filter(|&v| !gone[v]).find_map(|v| {
                let parts = g.coefficients_in(v);
                (parts.len() == 2 && parts[1].is_constant()).then_some((k, v, parts))
            })
        });
        let Some((k, v, parts)) = pick else { break };
        gens.swap_remove(k);
        let lambda = parts[1].coeff(&Exponent::zero(arity));
        let value = parts[0].scale(&-lambda.inv().expect("nonzero"));
        let images: Vec<MultiPoly> = (0..arity)
            .map(|i| {
                if i == v {
                    value.clone()
                } else {
                    MultiPoly::var(arity, i)
                }
            })
            .collect();
        gens = gens
            .iter()
            .map(|g| {
                if g.degree_in(v).is_some_and(|m| m > 0) {
                    g.substitute(&images).expect("same ring")
                } else {
                    g.clone()
                }
            })
            .filter(|g| !g.is_zero())
            .collect();
        gone[v] = true;
    }
    let kept: Vec<usize> = (0..arity).filter(|&i| !gone[i]).collect();
    let mut slot = vec![0; arity];
    for (new, &old) in kept.iter().enumerate() {
        slot[old] = new;
    }
    let compact = gens
        .iter()
        .map(|g| {
            let mut out = MultiPoly::zero(kept.len());
            for (e, c) in g.terms() {
                let mut entries = vec![0u32; kept.len()];
                for &old in &kept {
                    entries[slot[old]] = e.get(old);
                }
                out.add_term(Exponent::new(entries), c);
            }
            out
        })
        .collect();
    (compact, kept.len())
}

fn plane_polynomial(curve: &CurveSpec) -> Result<&MultiPoly> {
    match curve {
        CurveSpec::AlgebraicPlane(f) => Ok(f),
        other => Err(Error::Precondition(format!(
            "coefficient varieties need an algebraic curve, got {}",
            other.kind()
        ))),
    }
}

pub(crate) fn xs_generators(
    f: &MultiPoly,
    s: usize,
    arity: usize,
    offset: usize,
) -> Result<Vec<MultiPoly>> {
    Ok(expand_in_t(f, s, arity, offset)?
        .into_iter()
        .filter(|g| !g.is_zero())
        .collect())
}

pub fn xs_ideal(curve: &CurveSpec, s: u32) -> Result<XsIdeal> {
    let f = plane_polynomial(curve)?;
    if s == 0 {
        return Err(Error::Precondition("height s must be at least 1".into()));
    }
    let n = s as usize;
    let gens = xs_generators(f, n, 2 * n, 0)?;
    let vars = (0..n)
        .map(|i| format!("a{i}"))
        .chain((0..n).map(|j| format!("b{j}")))
        .collect();
    Ok(XsIdeal {
        s,
        vars,
        basis: IdealBasis::new(2 * n, gens)?,
    })
}

/// Dimension of the variety of height-`s` points.
pub fn xs_dimension(curve: &CurveSpec, s: u32) -> Result<i64> {
    let xs = xs_ideal(curve, s)?;
    let (gens, arity) = eliminate_linear(xs.basis.generators().to_vec(), xs.basis.arity(), 0);
    variety_dimension(&IdealBasis::new(arity, gens)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn curve(f: &str) -> CurveSpec {
        CurveSpec::algebraic(f.parse().unwrap()).unwrap()
    }

    #[test]
    fn parabola_generators_at_height_two() {
        let xs = xs_ideal(&curve("x1 - x0^2"), 2).unwrap();
        let names: Vec<&str> = xs.vars.iter().map(String::as_str).collect();
        let shown: Vec<String> = xs
            .basis
            .generators()
            .iter()
            .map(|g| g.display_with(&xs.vars).to_string())
            .collect();
        assert_eq!(shown, ["-a0^2 + b0", "-2*a0*a1 + b1", "-a1^2"]);
        let expected = ["b0 - a0^2", "b1 - 2*a0*a1", "-a1^2"]
            .map(|g| MultiPoly::parse_with(g, &names).unwrap());
        assert_eq!(xs.basis.generators(), &expected[..]);
    }

    #[test]
    fn dimension_law_for_monomial_curves() {
        let parabola = curve("x1 - x0^2");
        let dims: Vec<i64> = (1..=5)
            .map(|s| xs_dimension(&parabola, s).unwrap())
            .collect();
        assert_eq!(dims, [1, 1, 2, 2, 3]);
        assert_eq!(xs_dimension(&curve("x1 - x0^3"), 4).unwrap(), 2);
        for s in 1..=4 {
            assert_eq!(xs_dimension(&curve("x1 - x0"), s).unwrap(), s as i64);
        }
    }

    #[test]
    fn height_three_parabola_forces_top_coefficient() {
        let xs = xs_ideal(&curve("x1 - x0^2"), 3).unwrap();
        let gb = xs.basis.groebner().unwrap();
        let a2 = MultiPoly::var(6, 2);
        assert!(!gb.contains(&a2).unwrap());
        assert!(gb.contains(&a2.pow(2)).unwrap());
    }

    #[test]
    fn coordinates_round_trip() {
        let xs = xs_ideal(&curve("x1 - x0^2"), 3).unwrap();
        let x: LaurentPoly = "2 - t".parse().unwrap();
        let y = x.pow(2);
        let c = xs.coords_of(&x, &y).unwrap();
        assert!(xs
            .basis
            .generators()
            .iter()
            .all(|g| g.eval(&c).unwrap().is_zero()));
        assert_eq!(xs.point_of(&c).unwrap(), (x.clone(), y));
        assert!(xs.coords_of(&x.pow(3), &x).is_err());
    }

    #[test]
    fn linear_elimination_keeps_protected_variables() {
        let names = ["x0", "x1", "x2"];
        let gens: Vec<MultiPoly> = ["x1 - x0^2", "x2 - x0*x1 + 1"]
            .iter()
            .map(|g| MultiPoly::parse_with(g, &names).unwrap())
            .collect();
        let (out, arity) = eliminate_linear(gens.clone(), 3, 0);
        assert_eq!((out.len(), arity), (0, 1));
        let (out, arity) = eliminate_linear(gens, 3, 2);
        assert_eq!(arity, 2);
        assert_eq!(out, ["x1 - x0^2".parse::<MultiPoly>().unwrap()]);
    }

    #[test]
    fn only_algebraic_curves_have_coefficient_ideals() {
        let exp = CurveSpec::SeriesGraph(super::super::SeriesGraph::exp());
        assert!(matches!(xs_ideal(&exp, 2), Err(Error::Precondition(_))));
        assert!(xs_ideal(&curve("x1 - x0"), 0).is_err());
    }
}
