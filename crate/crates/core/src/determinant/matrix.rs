use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::monomial::{Exponent, ExponentSet};
use crate::series::{LaurentPoly, Valuation};

/// Monomials evaluated at points of `k[t]^n`: row `i`, column `j` holds
/// `points[i] ^ exponents[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMatrix {
    points: Vec<Vec<LaurentPoly>>,
    exponents: ExponentSet,
    entries: Vec<Vec<LaurentPoly>>,
}

impl PointMatrix {
    pub fn points(&self) -> &[Vec<LaurentPoly>] {
        &self.points
    }

    pub fn exponents(&self) -> &ExponentSet {
        &self.exponents
    }

    pub fn entries(&self) -> &[Vec<LaurentPoly>] {
        &self.entries
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    /// Largest `t`-degree of coordinate `i` over all points.
    pub fn coordinate_degree(&self, i: usize) -> i64 {
        self.points
            .iter()
            .filter_map(|p| p[i].degree())
            .max()
            .unwrap_or(0)
    }
}

/// Evaluates every exponent at every point. Coordinates must lie in `k[t]`.
pub fn build_matrix(points: &[Vec<LaurentPoly>], exponents: &ExponentSet) -> Result<PointMatrix> {
    if points.is_empty() || exponents.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = exponents.arity();
    for p in points {
        if p.len() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: p.len(),
            });
        }
        for c in p {
            if let Valuation::Finite(v) = c.ord_t() {
                if v < 0 {
                    return Err(Error::NegativeValuation { ord: v });
                }
            }
        }
    }
    let max_exp: Vec<u32> = (0..n)
        .map(|i| exponents.iter().map(|e| e.get(i)).max().unwrap_or(0))
        .collect();
    let entries = points
        .iter()
        .map(|p| {
            let powers: Vec<Vec<LaurentPoly>> = (0..n)
                .map(|i| {
                    let mut row = alloc::vec![LaurentPoly::one()];
                    for k in 1..=max_exp[i] as usize {
                        let next = &row[k - 1] * &p[i];
                        row.push(next);
                    }
                    row
                })
                .collect();
            exponents
                .iter()
                .map(|e| monomial_value(e, &powers))
                .collect()
        })
        .collect();
    Ok(PointMatrix {
        points: points.to_vec(),
        exponents: exponents.clone(),
        entries,
    })
}

fn monomial_value(e: &Exponent, powers: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for (i, &k) in e.entries().iter().enumerate() {
        if k > 0 {
            acc = &acc * &powers[i][k as usize];
        }
    }
    acc
}

fn exact_div(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    a.div_exact(b)
        .expect("fraction-free elimination divides exactly")
}

/// Determinant of a square matrix over `k[t]` by Bareiss elimination; every
/// intermediate entry is a minor of the input, so no fractions appear.
pub fn bareiss_det(matrix: &[Vec<LaurentPoly>]) -> Result<LaurentPoly> {
    let n = matrix.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if let Some(row) = matrix.iter().find(|r| r.len() != n) {
        return Err(Error::NotSquare {
            rows: n,
            cols: row.len(),
        });
    }
    let mut a = matrix.to_vec();
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return Ok(LaurentPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = exact_div(&num, &prev);
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Fraction-free Gauss-Jordan form: every pivot equals the same `d`, the
/// pivot columns are otherwise zero, and `rank` rows are nonzero.
pub(crate) struct Echelon {
    pub rows: Vec<Vec<LaurentPoly>>,
    pub pivots: Vec<usize>,
    pub d: LaurentPoly,
}

pub(crate) fn echelon(matrix: &[Vec<LaurentPoly>]) -> Echelon {
    let mut a = matrix.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = LaurentPoly::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in (0..rows).filter(|&i| i != r) {
            for j in (0..cols).filter(|&j| j != c) {
                let num = &(&a[r][c] * &a[i][j]) - &(&a[i][c] * &a[r][j]);
                a[i][j] = exact_div(&num, &prev);
            }
            a[i][c] = LaurentPoly::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    Echelon {
        rows: a,
        pivots,
        d: prev,
    }
}

/// Rank over the fraction field `k(t)`.
pub fn rank(m: &PointMatrix) -> usize {
    echelon(&m.entries).pivots.len()
}

/// `sum_j coeffs[j] * x^exponents[j] = 0`, coefficients in `k[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypersurface {
    pub exponents: ExponentSet,
    pub coeffs: Vec<LaurentPoly>,
}

impl Hypersurface {
    pub fn degree(&self) -> u32 {
        self.exponents
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, _)| e.total())
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, point: &[LaurentPoly]) -> Result<LaurentPoly> {
        let n = self.exponents.arity();
        if point.len() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: point.len(),
            });
        }
        let mut acc = LaurentPoly::zero();
        for (e, c) in self.exponents.iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let mut term = c.clone();
            for (i, &k) in e.entries().iter().enumerate() {
                term = &term * &point[i].pow(k);
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// The nonzero terms, for display.
    pub fn support(&self) -> impl Iterator<Item = (&Exponent, &LaurentPoly)> + '_ {
        self.exponents
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
    }
}

/// A nonzero kernel vector of the matrix, read as a hypersurface through
/// all of its points. Entries are polynomials in `t` with trivial common
/// factor; the first nonzero entry has lowest coefficient 1.
pub fn kernel_hypersurface(m: &PointMatrix) -> Result<Hypersurface> {
    let ech = echelon(&m.entries);
    let cols = m.cols();
    let Some(free) = (0..cols).find(|c| !ech.pivots.contains(c)) else {
        return Err(Error::FullRank);
    };
    let mut coeffs = alloc::vec![LaurentPoly::zero(); cols];
    coeffs[free] = ech.d.clone();
    for (i, &p) in ech.pivots.iter().enumerate() {
        coeffs[p] = -&ech.rows[i][free];
    }
    let content = coeffs.iter().fold(LaurentPoly::zero(), |g, c| g.gcd(c));
    for c in coeffs.iter_mut() {
        *c = exact_div(c, &content);
    }
    let first = coeffs
        .iter()
        .find(|c| !c.is_zero())
        .expect("kernel vector is nonzero");
    let low = first
        .terms()
        .next()
        .map(|(_, c)| c.clone())
        .expect("nonzero");
    let scale = low.inv().expect("nonzero");
    let coeffs = coeffs.iter().map(|c| c.scale(&scale)).collect();
    Ok(Hypersurface {
        exponents: m.exponents.clone(),
        coeffs,
    })
}

/// True iff the hypersurface vanishes exactly at every point.
pub fn verify_vanishing(h: &Hypersurface, points: &[Vec<LaurentPoly>]) -> Result<bool> {
    for p in points {
        if !h.eval(p)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Product of the degrees: the most points two plane curves without a
/// common component can share.
pub fn bezout_bound(d1: u64, d2: u64) -> u64 {
    d1 * d2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{enumerate_grevlex, DegreeMode};
    use crate::scalar::Scalar;
    use alloc::vec;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn on_parabola(xs: &[&str]) -> Vec<Vec<LaurentPoly>> {
        xs.iter().map(|x| vec![lp(x), lp(x).pow(2)]).collect()
    }

    #[test]
    fn matrix_entries() {
        let d1 = enumerate_grevlex(2, 1, DegreeMode::AtMost).unwrap();
        let m = build_matrix(&[vec![lp("1"), lp("1")]], &d1).unwrap();
        assert_eq!(m.entries()[0], vec![lp("1"); 3]);
        let single = ExponentSet::new(2, vec![Exponent::new(vec![1, 1])]).unwrap();
        let m = build_matrix(&[vec![lp("t"), lp("t^2")]], &single).unwrap();
        assert_eq!(m.entries()[0][0], lp("t^3"));
        assert_eq!(build_matrix(&[], &d1), Err(Error::EmptyInput));
        assert_eq!(
            build_matrix(&[vec![lp("t^-1"), lp("1")]], &d1),
            Err(Error::NegativeValuation { ord: -1 })
        );
    }

    #[test]
    fn determinants() {
        let a = vec![vec![lp("t"), lp("1")], vec![lp("t^2"), lp("t")]];
        assert!(bareiss_det(&a).unwrap().is_zero());
        let b = vec![vec![lp("1"), lp("1")], vec![lp("1"), lp("2")]];
        assert_eq!(bareiss_det(&b).unwrap(), lp("1"));
        let c = vec![vec![lp("0"), lp("1")], vec![lp("1"), lp("0")]];
        assert_eq!(bareiss_det(&c).unwrap(), lp("-1"));
        let bad = vec![vec![lp("1"), lp("1")]];
        assert_eq!(
            bareiss_det(&bad),
            Err(Error::NotSquare { rows: 1, cols: 2 })
        );
    }

    #[test]
    fn parabola_points_are_dependent() {
        let d2 = enumerate_grevlex(2, 2, DegreeMode::AtMost).unwrap();
        let pts = on_parabola(&["1", "2", "t", "1 + t", "3 - t^2", "t + 2*t^3"]);
        let m = build_matrix(&pts, &d2).unwrap();
        assert!(bareiss_det(m.entries()).unwrap().is_zero());
        assert_eq!(rank(&m), 5);
        let h = kernel_hypersurface(&m).unwrap();
        assert!(verify_vanishing(&h, &pts).unwrap());
        let support: Vec<Vec<u32>> = h.support().map(|(e, _)| e.entries().to_vec()).collect();
        assert_eq!(support, vec![vec![0, 1], vec![2, 0]]);
        assert_eq!(h.degree(), 2);
    }

    #[test]
    fn collinear_points_give_their_line() {
        let d1 = enumerate_grevlex(2, 1, DegreeMode::AtMost).unwrap();
        let pts: Vec<Vec<LaurentPoly>> = ["0", "1", "t"]
            .iter()
            .map(|x| vec![lp(x), &lp(x).scale(&Scalar::from_int(2)) + &lp("t")])
            .collect();
        let m = build_matrix(&pts, &d1).unwrap();
        let h = kernel_hypersurface(&m).unwrap();
        assert!(verify_vanishing(&h, &pts).unwrap());
        // y - 2x - t, normalized so the constant's lowest coefficient is 1
        assert_eq!(h.coeffs, vec![lp("t"), lp("2"), lp("-1")]);
    }

    #[test]
    fn single_point_on_a_line() {
        let lin = enumerate_grevlex(1, 1, DegreeMode::AtMost).unwrap();
        let x0 = lp("2 + t");
        let m = build_matrix(&[vec![x0.clone()]], &lin).unwrap();
        let h = kernel_hypersurface(&m).unwrap();
        assert_eq!(h.coeffs, vec![lp("1 + 1/2*t"), lp("-1/2")]);
        assert!(!verify_vanishing(&h, &[vec![lp("t")]]).unwrap());
    }

    #[test]
    fn full_rank_has_no_kernel() {
        let lin = enumerate_grevlex(1, 1, DegreeMode::AtMost).unwrap();
        let m = build_matrix(&[vec![lp("0")], vec![lp("1")]], &lin).unwrap();
        assert_eq!(kernel_hypersurface(&m), Err(Error::FullRank));
    }

    #[test]
    fn vanishing_examples() {
        let d2 = enumerate_grevlex(2, 2, DegreeMode::AtMost).unwrap();
        let mut coeffs = vec![LaurentPoly::zero(); d2.len()];
        let pos = |v: Vec<u32>| d2.iter().position(|e| e.entries() == v.as_slice()).unwrap();
        coeffs[pos(vec![0, 1])] = lp("1");
        coeffs[pos(vec![2, 0])] = lp("-1");
        let h = Hypersurface {
            exponents: d2,
            coeffs,
        };
        assert!(verify_vanishing(&h, &[vec![lp("t"), lp("t^2")]]).unwrap());
        assert!(!verify_vanishing(&h, &[vec![lp("t"), lp("t^3")]]).unwrap());
        assert!(verify_vanishing(&h, &[vec![lp("t")]]).is_err());
    }

    #[test]
    fn bezout() {
        assert_eq!(bezout_bound(3, 2), 6);
        assert_eq!(bezout_bound(5, 4), 20);
    }
}
