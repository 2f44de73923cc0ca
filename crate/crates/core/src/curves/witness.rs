use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::groebner::{standard_monomials, variety_dimension, IdealBasis, MultiPoly};
use crate::series::ResidueClass;

use super::xs::{eliminate_linear, expand_in_t, xs_generators};
use super::CurveSpec;

/// A bound `(N, d, e)`: some map to `O^d` has fibres of size at most `N`
/// on the height-`s` points after reduction mod `t^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CDimBound {
    pub n: u64,
    pub d: u32,
    pub e: u64,
}

impl CDimBound {
    pub fn new(n: u64, d: u32, e: u64) -> Self {
        CDimBound { n, d, e }
    }

    /// Bound for `X ∪ X'`.
    pub fn union(&self, other: &CDimBound) -> CDimBound {
        CDimBound {
            n: self.n + other.n,
            d: self.d.max(other.d),
            e: self.e.max(other.e),
        }
    }

    /// Bound for `X × X'`.
    pub fn product(&self, other: &CDimBound) -> CDimBound {
        CDimBound {
            n: self.n * other.n,
            d: self.d + other.d,
            e: self.e.max(other.e),
        }
    }

    /// Bound for `X'` given a map `X' -> X` with fibres of size at most
    /// `fibre`, where `self` bounds `X`.
    pub fn pullback(&self, fibre: u64) -> CDimBound {
        CDimBound {
            n: fibre * self.n,
            d: self.d,
            e: self.e,
        }
    }
}

impl fmt::Display for CDimBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.n, self.d, self.e)
    }
}

/// The map `C -> O^d` whose fibres are counted after reduction mod `t^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessMap {
    /// `(x, y) -> x` for 0, `(x, y) -> y` for 1.
    Projection(usize),
    /// Componentwise polynomials in `x = x0`, `y = x1`.
    Polynomial(Vec<MultiPoly>),
}

impl WitnessMap {
    fn components(&self) -> Result<Vec<MultiPoly>> {
        match self {
            WitnessMap::Projection(i) if *i < 2 => Ok(alloc::vec![MultiPoly::var(2, *i)]),
            WitnessMap::Projection(i) => Err(Error::UnsupportedMap(format!(
                "no coordinate {i} on a plane curve"
            ))),
            WitnessMap::Polynomial(gs) if gs.is_empty() => Err(Error::UnsupportedMap(
                "polynomial map with no components".into(),
            )),
            WitnessMap::Polynomial(gs) => gs
                .iter()
                .map(|g| match g.arity() {
                    2 => Ok(g.clone()),
                    0 | 1 => g.embed(2, &[0, 1][..g.arity()]),
                    a => Err(Error::UnsupportedMap(format!("component in {a} variables"))),
                })
                .collect(),
        }
    }

    pub fn dim(&self) -> u32 {
        match self {
            WitnessMap::Projection(_) => 1,
            WitnessMap::Polynomial(gs) => gs.len() as u32,
        }
    }
}

impl fmt::Display for WitnessMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessMap::Projection(0) => f.write_str("x"),
            WitnessMap::Projection(1) => f.write_str("y"),
            WitnessMap::Projection(i) => write!(f, "x{i}"),
            WitnessMap::Polynomial(gs) => {
                let names = [String::from("x"), String::from("y")];
                f.write_str("(")?;
                for (k, g) in gs.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{}", g.display_with(&names))?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Which fibres to examine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberMode {
    /// All fibres at once: the residue class enters as free parameters.
    Symbolic,
    /// The fibre over one residue class per map component.
    Concrete(Vec<ResidueClass>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberBound {
    /// Every examined fibre is finite with at most this many points.
    Finite(u64),
    /// Some examined fibre is positive-dimensional.
    Infinite,
}

impl FiberBound {
    pub fn is_infinite(self) -> bool {
        matches!(self, FiberBound::Infinite)
    }
}

impl fmt::Display for FiberBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberBound::Finite(n) => write!(f, "{n}"),
            FiberBound::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CDimWitnessReport {
    pub s: u32,
    pub map: WitnessMap,
    pub d: u32,
    pub e: u32,
    /// Dimension of the variety of height-`s` points.
    pub xs_dimension: i64,
    pub fiber: FiberBound,
    /// A residue class whose fibre is positive-dimensional, when one was found.
    pub infinite_fiber_point: Option<Vec<ResidueClass>>,
}

/// Checks the fibres of `map` mod `t^e` on the height-`s` points of an
/// algebraic plane curve.
///
/// Symbolic mode adjoins the residue class as parameters `c`. If the whole
/// fibred variety has dimension above `d e`, some fibre is infinite. Otherwise
/// a finite bound comes from a chain of polynomials in the ideal, each monic
/// in a new fibre variable over the parameters and the earlier variables;
/// variables with a power in the ideal are first replaced by zero. The
/// number of points in any fibre is then at most the product of the degrees.
pub fn cdim_witness_check(
    curve: &CurveSpec,
    s: u32,
    map: &WitnessMap,
    e: u32,
    mode: &FiberMode,
) -> Result<CDimWitnessReport> {
    let f = match curve {
        CurveSpec::AlgebraicPlane(f) => f,
        other => {
            return Err(Error::UnsupportedMap(format!(
                "fibre ideals need an algebraic curve, got {}",
                other.kind()
            )))
        }
    };
    let comps = map.components()?;
    if s == 0 || e == 0 {
        return Err(Error::Precondition("s and e must be at least 1".into()));
    }
    let d = comps.len() as u32;
    let xs_dim = super::xs_dimension(curve, s)?;
    let base = CDimWitnessReport {
        s,
        map: map.clone(),
        d,
        e,
        xs_dimension: xs_dim,
        fiber: FiberBound::Finite(0),
        infinite_fiber_point: None,
    };
    match mode {
        FiberMode::Concrete(classes) => {
            check_classes(classes, d, e)?;
            let fiber = concrete_fiber(f, &comps, s, e, classes)?;
            let infinite_fiber_point = fiber.is_infinite().then(|| classes.clone());
            Ok(CDimWitnessReport {
                fiber,
                infinite_fiber_point,
                ..base
            })
        }
        FiberMode::Symbolic => {
            let zero = zero_classes(d, e)?;
            let params = (d * e) as usize;
            if xs_dim > params as i64 {
                let probe = concrete_fiber(f, &comps, s, e, &zero)?;
                let infinite_fiber_point = probe.is_infinite().then_some(zero);
                return Ok(CDimWitnessReport {
                    fiber: FiberBound::Infinite,
                    infinite_fiber_point,
                    ..base
                });
            }
            let gens = fibre_generators(f, &comps, s, e, None)?;
            match integral_bound(gens, params + 2 * s as usize, params)? {
                Some(n) => Ok(CDimWitnessReport {
                    fiber: FiberBound::Finite(n),
                    ..base
                }),
                None => match concrete_fiber(f, &comps, s, e, &zero)? {
                    FiberBound::Infinite => Ok(CDimWitnessReport {
                        fiber: FiberBound::Infinite,
                        infinite_fiber_point: Some(zero),
                        ..base
                    }),
                    FiberBound::Finite(_) => Err(Error::Inconclusive(
                        "no integral chain over the residue parameters".into(),
                    )),
                },
            }
        }
    }
}

fn check_classes(classes: &[ResidueClass], d: u32, e: u32) -> Result<()> {
    if classes.len() != d as usize {
        return Err(Error::ArityMismatch {
            expected: d as usize,
            found: classes.len(),
        });
    }
    if let Some(c) = classes.iter().find(|c| c.modulus_exponent() != e) {
        return Err(Error::Precondition(format!(
            "residue class modulo t^{} where t^{e} was expected",
            c.modulus_exponent()
        )));
    }
    Ok(())
}

fn zero_classes(d: u32, e: u32) -> Result<Vec<ResidueClass>> {
    (0..d)
        .map(|_| ResidueClass::of_poly(&crate::series::LaurentPoly::zero(), e))
        .collect()
}

/// Generators of the fibred ideal. Without `classes` the first `d e`
/// variables are the residue parameters `c_{m,k}`; with them the class
/// coefficients are substituted and only the `a`, `b` variables remain.
fn fibre_generators(
    f: &MultiPoly,
    comps: &[MultiPoly],
    s: u32,
    e: u32,
    classes: Option<&[ResidueClass]>,
) -> Result<Vec<MultiPoly>> {
    let (s, e) = (s as usize, e as usize);
    let params = if classes.is_some() {
        0
    } else {
        comps.len() * e
    };
    let arity = params + 2 * s;
    let mut gens = xs_generators(f, s, arity, params)?;
    for (m, g) in comps.iter().enumerate() {
        let coeffs = expand_in_t(g, s, arity, params)?;
        for k in 0..e {
            let lhs = coeffs
                .get(k)
                .cloned()
                .unwrap_or_else(|| MultiPoly::zero(arity));
            let target = match classes {
                Some(cs) => MultiPoly::constant(arity, cs[m].rep().coeff(k as i64)),
                None => MultiPoly::var(arity, m * e + k),
            };
            let c = lhs - target;
            if !c.is_zero() {
                gens.push(c);
            }
        }
    }
    Ok(gens)
}

fn concrete_fiber(
    f: &MultiPoly,
    comps: &[MultiPoly],
    s: u32,
    e: u32,
    classes: &[ResidueClass],
) -> Result<FiberBound> {
    let gens = fibre_generators(f, comps, s, e, Some(classes))?;
    let (gens, arity) = eliminate_linear(gens, 2 * s as usize, 0);
    let basis = IdealBasis::new(arity, gens)?;
    let dim = variety_dimension(&basis)?;
    if dim >= 1 {
        return Ok(FiberBound::Infinite);
    }
    if dim < 0 {
        return Ok(FiberBound::Finite(0));
    }
    let reduced = radicalize(basis.groebner()?, 0)?;
    if let Some(n) = tower_bound(&reduced, 0) {
        return Ok(FiberBound::Finite(n));
    }
    Ok(FiberBound::Finite(quotient_dimension(&reduced)?))
}

/// Product of degrees of a monic chain over the first `params` variables,
/// or `None` if the chain does not reach every variable.
fn integral_bound(gens: Vec<MultiPoly>, arity: usize, params: usize) -> Result<Option<u64>> {
    let (gens, arity) = eliminate_linear(gens, arity, params);
    let gb = IdealBasis::new(arity, gens)?.groebner()?;
    if gb.is_unit() {
        return Ok(Some(0));
    }
    let gb = radicalize(gb, params)?;
    Ok(tower_bound(&gb, params))
}

/// Adds every non-parameter variable that has a power in the ideal. The
/// variety is unchanged.
fn radicalize(mut gb: IdealBasis, params: usize) -> Result<IdealBasis> {
    let arity = gb.arity();
    loop {
        let top = gb
            .generators()
            .iter()
            .filter_map(MultiPoly::total_degree)
            .max()
            .unwrap_or(1)
            .max(1);
        let mut found = None;
        'vars: for z in params..arity {
            let v = MultiPoly::var(arity, z);
            if gb.reduce(&v).is_zero() {
                continue;
            }
            for m in 2..=top {
                if gb.reduce(&v.pow(m)).is_zero() {
                    found = Some(v);
                    break 'vars;
                }
            }
        }
        match found {
            Some(v) => gb = gb.with_generator(v)?.groebner()?,
            None => return Ok(gb),
        }
    }
}

fn tower_bound(gb: &IdealBasis, params: usize) -> Option<u64> {
    let arity = gb.arity();
    if gb.is_unit() {
        return Some(0);
    }
    let mut resolved: u64 = if params >= 64 {
        u64::MAX
    } else {
        (1u64 << params) - 1
    };
    let full: u64 = if arity >= 64 {
        u64::MAX
    } else {
        (1u64 << arity) - 1
    };
    let mut bound: u64 = 1;
    while resolved != full {
        let step = (0..arity)
            .filter(|z| resolved & (1 << z) == 0)
            .find_map(|z| {
                gb.generators()
                    .iter()
                    .find_map(|g| monic_degree(g, z, resolved).map(|m| (z, m)))
            });
        let (z, m) = step?;
        resolved |= 1 << z;
        bound = bound.checked_mul(m as u64)?;
    }
    Some(bound)
}

/// Degree of `g` in `x_z` if its only term of that degree is a constant
/// times a pure power of `x_z` and every other variable it uses is resolved.
fn monic_degree(g: &MultiPoly, z: usize, resolved: u64) -> Option<u32> {
    let m = g.degree_in(z).filter(|&m| m > 0)?;
    let allowed = resolved | (1 << z);
    let mut tops = 0;
    for (e, _) in g.terms() {
        if e.support_mask() & !allowed != 0 {
            return None;
        }
        if e.get(z) == m {
            if e.total() != m {
                return None;
            }
            tops += 1;
        }
    }
    (tops == 1).then_some(m)
}

/// `dim_Q Q[x]/I` for a zero-dimensional ideal given by a Gröbner basis.
fn quotient_dimension(gb: &IdealBasis) -> Result<u64> {
    let mut total = 0u64;
    for r in 0..=64u32 {
        let n = standard_monomials(gb, r)?.len() as u64;
        if n == 0 {
            return Ok(total);
        }
        total += n;
    }
    Err(Error::Inconclusive(
        "standard monomials do not terminate by degree 64".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::LaurentPoly;
    use alloc::string::ToString;
    use alloc::vec;

    fn curve(f: &str) -> CurveSpec {
        CurveSpec::algebraic(f.parse().unwrap()).unwrap()
    }

    fn class(s: &str, e: u32) -> ResidueClass {
        ResidueClass::of_poly(&s.parse::<LaurentPoly>().unwrap(), e).unwrap()
    }

    #[test]
    fn combinators() {
        let one = CDimBound::new(1, 1, 1);
        assert_eq!(one.union(&one), CDimBound::new(2, 1, 1));
        assert_eq!(
            CDimBound::new(2, 1, 3).product(&CDimBound::new(3, 2, 1)),
            CDimBound::new(6, 3, 3)
        );
        assert_eq!(CDimBound::new(2, 1, 5).pullback(4), CDimBound::new(8, 1, 5));
    }

    #[test]
    fn monomial_curve_fibres_are_points_at_the_sharp_exponent() {
        for d in 1..=3u32 {
            let c = curve(&alloc::format!("x1 - x0^{d}"));
            for s in 1..=4u32 {
                let e = s.div_ceil(d);
                let rep =
                    cdim_witness_check(&c, s, &WitnessMap::Projection(0), e, &FiberMode::Symbolic)
                        .unwrap();
                assert_eq!(rep.fiber, FiberBound::Finite(1), "d={d} s={s}");
                assert_eq!(rep.xs_dimension, ((s - 1) / d + 1) as i64);
            }
        }
    }

    #[test]
    fn monomial_curve_has_infinite_fibre_below_the_sharp_exponent() {
        let c = curve("x1 - x0^2");
        for s in 1..=2u32 {
            let sp = 2 * s + 1;
            for e in 1..=s {
                let rep =
                    cdim_witness_check(&c, sp, &WitnessMap::Projection(0), e, &FiberMode::Symbolic)
                        .unwrap();
                assert_eq!(rep.fiber, FiberBound::Infinite);
                let zero = rep.infinite_fiber_point.unwrap();
                assert!(zero[0].rep().is_zero());
            }
        }
    }

    #[test]
    fn concrete_fibres() {
        let c = curve("x1 - x0^2");
        let rep = cdim_witness_check(
            &c,
            3,
            &WitnessMap::Projection(0),
            2,
            &FiberMode::Concrete(vec![class("1 + t", 2)]),
        )
        .unwrap();
        assert_eq!(rep.fiber, FiberBound::Finite(1));
        let rep = cdim_witness_check(
            &c,
            3,
            &WitnessMap::Projection(0),
            1,
            &FiberMode::Concrete(vec![class("1", 1)]),
        )
        .unwrap();
        assert_eq!(rep.fiber, FiberBound::Infinite);
        assert!(rep.infinite_fiber_point.is_some());
        // at height 2 the parabola's points are constants, so y = 4 gives x = 2 or -2
        let rep = cdim_witness_check(
            &c,
            2,
            &WitnessMap::Projection(1),
            1,
            &FiberMode::Concrete(vec![class("4", 1)]),
        )
        .unwrap();
        assert_eq!(rep.fiber, FiberBound::Finite(2));
        let rep = cdim_witness_check(
            &c,
            2,
            &WitnessMap::Projection(1),
            2,
            &FiberMode::Concrete(vec![class("1 + 2*t", 2)]),
        )
        .unwrap();
        assert_eq!(rep.fiber, FiberBound::Finite(0));
        let bad = FiberMode::Concrete(vec![class("1", 3)]);
        assert!(cdim_witness_check(&c, 2, &WitnessMap::Projection(0), 2, &bad).is_err());
    }

    #[test]
    fn identity_graph_and_polynomial_maps() {
        let line = curve("x1 - x0");
        for s in 1..=3 {
            let rep = cdim_witness_check(
                &line,
                s,
                &WitnessMap::Projection(0),
                s,
                &FiberMode::Symbolic,
            )
            .unwrap();
            assert_eq!(rep.fiber, FiberBound::Finite(1));
        }
        let sum = WitnessMap::Polynomial(vec!["x0 + x1".parse().unwrap()]);
        let rep = cdim_witness_check(&line, 2, &sum, 2, &FiberMode::Symbolic).unwrap();
        assert_eq!(rep.fiber, FiberBound::Finite(1));
        assert_eq!(sum.to_string(), "(y + x)");
    }

    #[test]
    fn unsupported_maps() {
        let c = curve("x1 - x0^2");
        let bad = cdim_witness_check(&c, 2, &WitnessMap::Projection(2), 1, &FiberMode::Symbolic);
        assert!(matches!(bad, Err(Error::UnsupportedMap(_))));
        let exp = CurveSpec::SeriesGraph(super::super::SeriesGraph::exp());
        let bad = cdim_witness_check(&exp, 2, &WitnessMap::Projection(0), 1, &FiberMode::Symbolic);
        assert!(matches!(bad, Err(Error::UnsupportedMap(_))));
    }
}
