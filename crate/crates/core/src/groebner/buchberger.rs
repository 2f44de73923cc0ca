use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::monomial::Exponent;
use crate::scalar::Scalar;

use super::MultiPoly;

/// Pair reductions allowed before [`buchberger`] gives up.
pub const DEFAULT_PAIR_BUDGET: usize = 100_000;

/// Generators of an ideal, with flags recording what is known about them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdealBasis {
    arity: usize,
    generators: Vec<MultiPoly>,
    is_groebner: bool,
    is_homogeneous: bool,
}

impl IdealBasis {
    /// Zero generators are dropped.
    pub fn new(arity: usize, generators: Vec<MultiPoly>) -> Result<Self> {
        if let Some(bad) = generators.iter().find(|g| g.arity() != arity) {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: bad.arity(),
            });
        }
        let generators: Vec<MultiPoly> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        let is_homogeneous = generators.iter().all(MultiPoly::is_homogeneous);
        Ok(IdealBasis {
            arity,
            generators,
            is_groebner: false,
            is_homogeneous,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn is_groebner(&self) -> bool {
        self.is_groebner
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_homogeneous
    }

    /// True for the ideal `(1)`; only reliable on a Gröbner basis.
    pub fn is_unit(&self) -> bool {
        self.generators
            .iter()
            .any(|g| !g.is_zero() && g.is_constant())
    }

    pub fn leading_exponents(&self) -> Vec<Exponent> {
        self.generators
            .iter()
            .filter_map(|g| g.leading_exponent().cloned())
            .collect()
    }

    /// Reduced Gröbner basis with the default budget; a no-op on one.
    pub fn groebner(&self) -> Result<IdealBasis> {
        if self.is_groebner {
            return Ok(self.clone());
        }
        buchberger(self, DEFAULT_PAIR_BUDGET)
    }

    pub fn with_generator(&self, g: MultiPoly) -> Result<IdealBasis> {
        let mut gens = self.generators.clone();
        gens.push(g);
        IdealBasis::new(self.arity, gens)
    }

    /// Fully reduced remainder of `p` on division by the generators.
    pub fn reduce(&self, p: &MultiPoly) -> MultiPoly {
        normal_form(p, &self.generators)
    }

    /// Ideal membership; requires a Gröbner basis.
    pub fn contains(&self, p: &MultiPoly) -> Result<bool> {
        if !self.is_groebner {
            return Err(Error::NotGroebner);
        }
        Ok(self.reduce(p).is_zero())
    }
}

/// Remainder of `p` modulo `divisors`; every term of the result is
/// divisible by no leading monomial of a divisor.
pub fn normal_form(p: &MultiPoly, divisors: &[MultiPoly]) -> MultiPoly {
    let leads: Vec<(&Exponent, Scalar, &MultiPoly)> = divisors
        .iter()
        .filter_map(|g| {
            g.leading_term()
                .ok()
                .map(|(e, c)| (e, c.inv().expect("nonzero"), g))
        })
        .collect();
    let mut work = p.clone();
    let mut rem = MultiPoly::zero(p.arity());
    while let Ok((lt, lc)) = work.leading_term() {
        let (lt, lc) = (lt.clone(), lc.clone());
        match leads.iter().find(|(e, _, _)| e.divides(&lt)) {
            Some((e, inv, g)) => {
                let shift = lt.div(e).expect("divisible");
                work.sub_scaled_shift(&(&lc * inv), &shift, g);
            }
            None => {
                rem.add_term(lt.clone(), &lc);
                work.add_term(lt, &-lc);
            }
        }
    }
    rem
}

/// `lcm/LT(p) * p / LC(p) - lcm/LT(q) * q / LC(q)`.
pub fn s_polynomial(p: &MultiPoly, q: &MultiPoly) -> Result<MultiPoly> {
    if p.arity() != q.arity() {
        return Err(Error::ArityMismatch {
            expected: p.arity(),
            found: q.arity(),
        });
    }
    let (ep, cp) = p.leading_term()?;
    let (eq, cq) = q.leading_term()?;
    let l = ep.lcm(eq);
    let a = p.mul_monomial(&l.div(ep).expect("lcm"), &cp.inv()?);
    let b = q.mul_monomial(&l.div(eq).expect("lcm"), &cq.inv()?);
    Ok(a - b)
}

/// Reduced, monic Gröbner basis in the graded order. Pairs are taken in
/// order of increasing lcm degree; the coprime-leading-term and chain
/// criteria discard pairs that cannot contribute. Each pair that survives
/// the criteria counts against `budget`.
pub fn buchberger(basis: &IdealBasis, budget: usize) -> Result<IdealBasis> {
    let arity = basis.arity;
    let mut g: Vec<MultiPoly> = Vec::new();
    for p in &basis.generators {
        let r = normal_form(p, &g).monic();
        if !r.is_zero() {
            g.push(r);
        }
    }
    if g.iter().any(MultiPoly::is_constant) {
        return Ok(finish(arity, vec_one(arity), basis.is_homogeneous));
    }
    // (lcm degree, lcm, i, j) with i < j
    let mut queue: BTreeSet<(u32, Exponent, usize, usize)> = BTreeSet::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..g.len() {
        for i in 0..j {
            push_pair(&mut queue, &g, i, j);
        }
    }
    let mut spent = 0usize;
    while let Some(item) = queue.pop_first() {
        let (_, lcm, i, j) = item;
        done.insert((i, j));
        let (ei, ej) = (
            g[i].leading_exponent().unwrap(),
            g[j].leading_exponent().unwrap(),
        );
        if ei.is_coprime(ej) || chain_skips(&g, &done, i, j, &lcm) {
            continue;
        }
        spent += 1;
        if spent > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        let s = s_polynomial(&g[i], &g[j])?;
        let r = normal_form(&s, &g);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        if r.is_constant() {
            return Ok(finish(arity, vec_one(arity), basis.is_homogeneous));
        }
        g.push(r);
        let k = g.len() - 1;
        for i in 0..k {
            push_pair(&mut queue, &g, i, k);
        }
    }
    Ok(finish(arity, interreduce(g), basis.is_homogeneous))
}

fn vec_one(arity: usize) -> Vec<MultiPoly> {
    alloc::vec![MultiPoly::one(arity)]
}

fn push_pair(
    queue: &mut BTreeSet<(u32, Exponent, usize, usize)>,
    g: &[MultiPoly],
    i: usize,
    j: usize,
) {
    let l = g[i]
        .leading_exponent()
        .unwrap()
        .lcm(g[j].leading_exponent().unwrap());
    queue.insert((l.total(), l, i, j));
}

/// Some `k` has `LT(g_k) | lcm` and both `(i,k)` and `(k,j)` already handled.
fn chain_skips(
    g: &[MultiPoly],
    done: &BTreeSet<(usize, usize)>,
    i: usize,
    j: usize,
    lcm: &Exponent,
) -> bool {
    let handled = |a: usize, b: usize| done.contains(&(a.min(b), a.max(b)));
    (0..g.len()).any(|k| {
        k != i
            && k != j
            && g[k].leading_exponent().unwrap().divides(lcm)
            && handled(i, k)
            && handled(k, j)
    })
}

/// Drops redundant generators, reduces the rest against each other, makes
/// them monic and sorts by leading monomial.
fn interreduce(g: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let mut minimal: Vec<MultiPoly> = Vec::new();
    for (idx, p) in g.iter().enumerate() {
        let lt = p.leading_exponent().unwrap();
        let redundant = g.iter().enumerate().any(|(k, q)| {
            let lq = q.leading_exponent().unwrap();
            k != idx && lq.divides(lt) && (lq != lt || k < idx)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut reduced: Vec<MultiPoly> = (0..minimal.len())
        .map(|i| {
            let others: Vec<MultiPoly> = minimal
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, q)| q.clone())
                .collect();
            normal_form(&minimal[i], &others).monic()
        })
        .collect();
    reduced.sort_by(|a, b| a.leading_exponent().cmp(&b.leading_exponent()));
    reduced
}

fn finish(arity: usize, generators: Vec<MultiPoly>, is_homogeneous: bool) -> IdealBasis {
    IdealBasis {
        arity,
        generators,
        is_groebner: true,
        is_homogeneous,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn poly(s: &str) -> MultiPoly {
        MultiPoly::parse_with(s, &["x", "y", "z"]).unwrap()
    }

    fn ideal(gens: &[&str]) -> IdealBasis {
        IdealBasis::new(3, gens.iter().map(|s| poly(s)).collect()).unwrap()
    }

    fn all_s_pairs_reduce(gb: &IdealBasis) -> bool {
        let g = gb.generators();
        (0..g.len())
            .all(|j| (0..j).all(|i| normal_form(&s_polynomial(&g[i], &g[j]).unwrap(), g).is_zero()))
    }

    #[test]
    fn s_polynomial_examples() {
        assert!(s_polynomial(&poly("x^2"), &poly("x*y")).unwrap().is_zero());
        let p = poly("x^2 - y");
        assert!(s_polynomial(&p, &p).unwrap().is_zero());
        // LT(x^2 - y) = x^2, LT(x*y - 1) = x*y: S = y(x^2 - y) - x(x*y - 1)
        let s = s_polynomial(&p, &poly("x*y - 1")).unwrap();
        assert_eq!(s, poly("x - y^2"));
        assert_eq!(
            s_polynomial(&MultiPoly::zero(3), &p),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn small_bases() {
        let gb = buchberger(&ideal(&["x^2 - y", "x*y - 1"]), 1000).unwrap();
        assert!(gb.is_groebner());
        assert!(all_s_pairs_reduce(&gb));
        let mut lts = gb.leading_exponents();
        lts.sort();
        let expected: Vec<Exponent> = [[2, 0, 0], [1, 1, 0], [0, 2, 0]]
            .iter()
            .map(|e| Exponent::new(e.to_vec()))
            .collect();
        assert_eq!(lts, expected);
        assert!(gb.contains(&poly("x^2 - y")).unwrap());
        assert!(gb.contains(&poly("x*y - 1")).unwrap());

        let principal = buchberger(&ideal(&["2*x^2 + 4*y"]), 10).unwrap();
        assert_eq!(principal.generators(), &[poly("x^2 + 2*y")]);

        let lin = buchberger(&ideal(&["y", "x"]), 10).unwrap();
        assert_eq!(lin.generators(), &[poly("x"), poly("y")]);

        let unit = buchberger(&ideal(&["x", "x + 1"]), 10).unwrap();
        assert!(unit.is_unit());
    }

    #[test]
    fn canonical_under_generator_shuffles() {
        let gens = ["x^2 - y*z", "y^2 - x*z", "z^2 - x*y + x"];
        let a = buchberger(&ideal(&gens), 10_000).unwrap();
        let b = buchberger(&ideal(&[gens[2], gens[0], gens[1]]), 10_000).unwrap();
        assert_eq!(a, b);
        assert!(all_s_pairs_reduce(&a));
        for g in gens {
            assert!(a.contains(&poly(g)).unwrap());
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = buchberger(&ideal(&["x^2 - y*z", "y^2 - x*z", "z^2 - x*y + x"]), 1).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { budget: 1 });
    }

    #[test]
    fn reduce_prints_remainder() {
        let gb = buchberger(&ideal(&["x^2 - y"]), 10).unwrap();
        assert_eq!(gb.reduce(&poly("x^3 + x")).to_string(), "x0*x1 + x0");
    }
}
