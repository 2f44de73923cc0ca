//! Independent reference computations for the acceptance battery.

use countdim_core::groebner::MultiPoly;
use countdim_core::monomial::{enumerate_grevlex, DegreeMode, Exponent};
use countdim_core::{Error, Fp, Result, Scalar};

/// Degree-`r` standard monomials of a homogeneous ideal by linear algebra:
/// `I_r` is spanned by the products `m g` of degree `r`, and row reduction
/// with columns in decreasing order exposes the leading monomials of `I_r`.
pub fn la_standard_monomials(gens: &[MultiPoly], arity: usize, r: u32) -> Result<Vec<Exponent>> {
    if gens.iter().any(|g| !g.is_homogeneous() || g.is_zero()) {
        return Err(Error::NotHomogeneous);
    }
    let mut cols: Vec<Exponent> = enumerate_grevlex(arity, r, DegreeMode::Exact)?
        .iter()
        .cloned()
        .collect();
    cols.reverse();
    let index = |e: &Exponent| cols.iter().position(|c| c == e).expect("degree r monomial");
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for g in gens {
        let deg = g.total_degree().expect("nonzero");
        if deg > r {
            continue;
        }
        for m in enumerate_grevlex(arity, r - deg, DegreeMode::Exact)?.iter() {
            let mut row = vec![Scalar::zero(); cols.len()];
            for (e, c) in g.terms() {
                row[index(&e.mul(m))] = c.clone();
            }
            rows.push(row);
        }
    }
    let mut pivots = vec![false; cols.len()];
    let mut next = 0;
    for col in 0..cols.len() {
        let Some(p) = (next..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(next, p);
        let pivot = rows[next].clone();
        let inv = pivot[col].inv()?;
        for row in rows.iter_mut().skip(next + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] * &inv;
            for (v, p) in row.iter_mut().zip(&pivot).skip(col) {
                *v = &*v - &(&f * p);
            }
        }
        pivots[col] = true;
        next += 1;
    }
    let mut out: Vec<Exponent> = cols
        .into_iter()
        .zip(pivots)
        .filter(|(_, p)| !p)
        .map(|(e, _)| e)
        .collect();
    out.reverse();
    Ok(out)
}

pub type F5 = Fp<5>;

/// A polynomial in `t` over `F_5`, dense, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct F5Poly(Vec<F5>);

impl F5Poly {
    pub fn new(mut coeffs: Vec<F5>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        F5Poly(coeffs)
    }

    pub fn constant(c: F5) -> Self {
        F5Poly::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Every polynomial of degree below `s`.
    pub fn all(s: usize) -> Vec<F5Poly> {
        let mut out = vec![Vec::new()];
        for _ in 0..s {
            out = out
                .into_iter()
                .flat_map(|v: Vec<F5>| {
                    F5::elements().into_iter().map(move |c| {
                        let mut w = v.clone();
                        w.push(c);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(F5Poly::new).collect()
    }

    pub fn add(&self, other: &F5Poly) -> F5Poly {
        let n = self.0.len().max(other.0.len());
        F5Poly::new(
            (0..n)
                .map(|k| {
                    *self.0.get(k).unwrap_or(&F5::zero()) + *other.0.get(k).unwrap_or(&F5::zero())
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &F5Poly) -> F5Poly {
        if self.is_zero() || other.is_zero() {
            return F5Poly(Vec::new());
        }
        let mut out = vec![F5::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = out[i + j] + *a * *b;
            }
        }
        F5Poly::new(out)
    }

    pub fn pow(&self, k: u32) -> F5Poly {
        (0..k).fold(F5Poly::constant(F5::one()), |acc, _| acc.mul(self))
    }

    /// The class modulo `t^e`, as a padded coefficient vector.
    pub fn residue(&self, e: usize) -> Vec<F5> {
        (0..e)
            .map(|k| *self.0.get(k).unwrap_or(&F5::zero()))
            .collect()
    }
}

fn to_f5(c: &Scalar) -> Result<F5> {
    let v = c
        .to_i64()
        .filter(|_| c.is_integer())
        .ok_or_else(|| Error::Domain(format!("coefficient {c} is not an integer")))?;
    Ok(F5::new(v.rem_euclid(5) as u64))
}

/// `f(point)` for an integer polynomial reduced mod 5.
pub fn eval_f5(f: &MultiPoly, point: &[F5Poly]) -> Result<F5Poly> {
    if point.len() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            found: point.len(),
        });
    }
    let mut acc = F5Poly(Vec::new());
    for (e, c) in f.terms() {
        let mut term = F5Poly::constant(to_f5(c)?);
        for (i, &k) in e.entries().iter().enumerate() {
            term = term.mul(&point[i].pow(k));
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// All `(x, y)` of degree below `s` over `F_5` with `F(x, y) = 0`.
pub fn curve_points_f5(f: &MultiPoly, s: usize) -> Result<Vec<(F5Poly, F5Poly)>> {
    let polys = F5Poly::all(s);
    let mut out = Vec::new();
    for x in &polys {
        for y in &polys {
            if eval_f5(f, &[x.clone(), y.clone()])?.is_zero() {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    Ok(out)
}

/// Largest number of items sharing a key.
pub fn max_fibre<T, K: Ord>(items: &[T], key: impl Fn(&T) -> K) -> u64 {
    let mut counts = std::collections::BTreeMap::new();
    for it in items {
        *counts.entry(key(it)).or_insert(0u64) += 1;
    }
    counts.into_values().max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use countdim_core::groebner::{standard_monomials, IdealBasis};

    #[test]
    fn oracle_on_a_conic() {
        // one of the six quadrics is the leading monomial of the generator
        let g: MultiPoly = "x0*x2 - x1^2".parse().unwrap();
        let std = la_standard_monomials(std::slice::from_ref(&g), 3, 2).unwrap();
        assert_eq!(std.len(), 5);
        let gb = IdealBasis::new(3, vec![g]).unwrap().groebner().unwrap();
        for r in 0..=5 {
            let a = la_standard_monomials(gb.generators(), 3, r).unwrap();
            assert_eq!(a, standard_monomials(&gb, r).unwrap().members());
        }
        assert!(la_standard_monomials(&["x0 + 1".parse().unwrap()], 1, 1).is_err());
    }

    #[test]
    fn f5_points_on_the_parabola() {
        let f: MultiPoly = "x1 - x0^2".parse().unwrap();
        for s in 1..=3 {
            // y is determined by x, and deg x^2 < s forces deg x <= (s-1)/2
            let pts = curve_points_f5(&f, s).unwrap();
            assert_eq!(pts.len(), 5usize.pow(((s - 1) / 2 + 1) as u32));
        }
        assert_eq!(F5Poly::all(2).len(), 25);
        assert_eq!(max_fibre(&[1, 2, 2, 3, 3, 3], |&v| v), 3);
    }
}
