use countdim_core::curves::{transcendence_reduction_step, xs_ideal, CurveSpec};
use countdim_core::determinant::{
    bareiss_det, build_matrix, kernel_hypersurface, verify_vanishing,
};
use countdim_core::groebner::{buchberger, s_polynomial, IdealBasis, MultiPoly};
use countdim_core::monomial::{enumerate_grevlex, DegreeMode, Exponent};
use countdim_core::{exp_series, LaurentPoly, Scalar, TruncSeries, Valuation};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Scalar::new(n, d).unwrap())
}

fn poly(max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec((-2i64..6, scalar()), 0..=max_terms).prop_map(LaurentPoly::from_terms)
}

fn small_int_poly() -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec(-3i64..=3, 1..=3).prop_map(|c| LaurentPoly::from_ints(&c))
}

fn multipoly(arity: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    let term = (proptest::collection::vec(0..=max_deg, arity), -3i64..=3);
    proptest::collection::vec(term, 1..=max_terms).prop_map(move |ts| {
        let terms = ts
            .into_iter()
            .filter(|(e, _)| e.iter().sum::<u32>() <= max_deg)
            .map(|(e, c)| (Exponent::new(e), Scalar::from_int(c)));
        MultiPoly::from_terms(arity, terms).unwrap()
    })
}

fn cofactor_det(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut acc = LaurentPoly::zero();
    for (j, entry) in m[0].iter().enumerate() {
        let minor: Vec<Vec<LaurentPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = entry * &cofactor_det(&minor);
        acc = if j % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_laws(a in poly(4), b in poly(4), c in poly(4)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn valuation_is_ultrametric_and_multiplicative(a in poly(4), b in poly(4)) {
        let sum = (&a + &b).ord_t();
        prop_assert!(sum >= a.ord_t().min(b.ord_t()));
        if a.ord_t() != b.ord_t() {
            prop_assert_eq!(sum, a.ord_t().min(b.ord_t()));
        }
        prop_assert_eq!((&a * &b).ord_t(), a.ord_t() + b.ord_t());
    }

    #[test]
    fn coeff_scale_is_a_ring_map(a in poly(4), b in poly(4), n in 1i64..5, sign in any::<bool>()) {
        let lambda = Scalar::from_int(if sign { n } else { -n });
        let lhs = (&a * &b).coeff_scale(&lambda).unwrap();
        let rhs = &a.coeff_scale(&lambda).unwrap() * &b.coeff_scale(&lambda).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exp_turns_sums_into_products(a in poly(3), b in poly(3)) {
        let (a, b) = (lift(&a), lift(&b));
        let prec = 8;
        let ea = exp_series(&TruncSeries::from_poly(&a, prec), prec).unwrap();
        let eb = exp_series(&TruncSeries::from_poly(&b, prec), prec).unwrap();
        let eab = exp_series(&TruncSeries::from_poly(&(&a + &b), prec), prec).unwrap();
        prop_assert!(eab.agrees_with(&(&ea * &eb)));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion(n in 1usize..=4, seed in proptest::collection::vec(small_int_poly(), 16)) {
        let m: Vec<Vec<LaurentPoly>> = (0..n).map(|i| seed[i * n..(i + 1) * n].to_vec()).collect();
        prop_assert_eq!(bareiss_det(&m).unwrap(), cofactor_det(&m));
    }

    #[test]
    fn kernel_vanishes_on_dependent_points(xs in proptest::collection::vec(small_int_poly(), 6)) {
        // six points on y = x^2 against the six monomials of degree <= 2
        let exps = enumerate_grevlex(2, 2, DegreeMode::AtMost).unwrap();
        let pts: Vec<Vec<LaurentPoly>> = xs.iter().map(|x| vec![x.clone(), x.pow(2)]).collect();
        let m = build_matrix(&pts, &exps).unwrap();
        let h = kernel_hypersurface(&m).unwrap();
        prop_assert!(verify_vanishing(&h, &pts).unwrap());
    }

    #[test]
    fn s_pairs_of_a_groebner_basis_reduce_to_zero(gens in proptest::collection::vec(multipoly(3, 2, 3), 1..=3)) {
        let basis = IdealBasis::new(3, gens).unwrap();
        let gb = buchberger(&basis, 20_000).unwrap();
        let g = gb.generators();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                let s = s_polynomial(&g[i], &g[j]).unwrap();
                prop_assert!(gb.reduce(&s).is_zero());
            }
        }
        for p in basis.generators() {
            prop_assert!(gb.contains(p).unwrap());
        }
    }

    #[test]
    fn reduced_basis_ignores_generator_order(gens in proptest::collection::vec(multipoly(3, 2, 3), 2..=3), rot in 0usize..3) {
        let mut shuffled = gens.clone();
        let k = rot % shuffled.len();
        shuffled.rotate_left(k);
        shuffled.reverse();
        let a = buchberger(&IdealBasis::new(3, gens).unwrap(), 20_000).unwrap();
        let b = buchberger(&IdealBasis::new(3, shuffled).unwrap(), 20_000).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn bounded_height_points_solve_the_coefficient_system(
        coeffs in proptest::collection::vec(-4i64..=4, 1..=2),
        d in 1u32..=3,
    ) {
        let curve = CurveSpec::algebraic(format!("x1 - x0^{d}").parse().unwrap()).unwrap();
        let x = LaurentPoly::from_ints(&coeffs);
        let y = x.pow(d);
        let s = (y.degree().unwrap_or(0).max(x.degree().unwrap_or(0)) + 1) as u32;
        let xs = xs_ideal(&curve, s).unwrap();
        let c = xs.coords_of(&x, &y).unwrap();
        prop_assert!(xs.basis.generators().iter().all(|g| g.eval(&c).unwrap().is_zero()));
        // perturbing y off the curve breaks some equation
        let mut off = c.clone();
        off[s as usize] = &off[s as usize] + &Scalar::one();
        prop_assert!(xs.basis.generators().iter().any(|g| !g.eval(&off).unwrap().is_zero()));
    }

    #[test]
    fn reduction_step_satisfies_its_identity(f in multipoly(2, 3, 5)) {
        prop_assume!(!f.is_zero());
        let step = transcendence_reduction_step(&f).unwrap();
        prop_assert!(step.identity_holds(8).unwrap());
    }
}

/// `t * p` restricted to nonnegative exponents: an element of `t Q[t]`.
fn lift(p: &LaurentPoly) -> LaurentPoly {
    let p = p.truncate_below(6);
    let shifted = match p.ord_t() {
        Valuation::Finite(v) if v < 0 => p.shift(-v),
        _ => p,
    };
    shifted.shift(1)
}
