//! The acceptance battery. Each check has a pinned time limit; exceeding
//! it is a failure.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use countdim_core::curves::{
    adversarial_collapse_check, adversarial_eval, cdim_witness_check, minimal_height,
    transcendence_reduction_step, xs_dimension, xs_ideal, AdversarialParams, CDimBound, CurveSpec,
    FiberBound, FiberMode, WitnessMap,
};
use countdim_core::determinant::Verdict;
use countdim_core::groebner::{
    a_estimates, buchberger, hilbert_fn, standard_monomials, variety_dimension, IdealBasis,
    MultiPoly,
};
use countdim_core::monomial::{dm_parameters, first_d_below, ve_ratio_table};
use countdim_core::{Error, LaurentPoly, Scalar};

use crate::config::{ExperimentConfig, Subcommand};
use crate::detmethod::{det_trial, DetTrialSpec};
use crate::oracle::{curve_points_f5, la_standard_monomials, max_fibre, F5Poly};
use crate::sample::{GraphCurve, Sampler};

/// First `d` with `V/e < 1/10` for `n = 2`, `m = 1`.
pub const FIRST_D_BELOW_TENTH: u32 = 24;
pub const DET_TRIALS: usize = 200;
pub const CAPTURE_TRIALS: usize = 100;
pub const GROEBNER_TRIALS: usize = 25;
/// Cells of the dimension table that must finish within the pair budget.
pub const XS_CELLS_REQUIRED: usize = 15;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    pub slow: bool,
    pub golden_dir: PathBuf,
    /// Restrict to these check ids.
    pub only: Option<Vec<String>>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 0,
            slow: false,
            golden_dir: PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/golden")),
            only: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub id: String,
    pub title: &'static str,
    pub status: Status,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "{:<12} {} {}: {} ({:.2} s, limit {} s)",
            self.id,
            self.status.as_str(),
            self.title,
            self.detail,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs()
        )
    }
}

type CheckFn = fn(&Options) -> Result<(Status, String), String>;

pub struct Check {
    pub id: &'static str,
    pub title: &'static str,
    pub limit: Duration,
    pub run: CheckFn,
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

/// The numbered acceptance criteria, in order.
pub fn criteria() -> Vec<Check> {
    vec![
        Check {
            id: "criterion-1",
            title: "parameter formulas",
            limit: secs(1),
            run: parameter_formulas,
        },
        Check {
            id: "criterion-2",
            title: "determinant estimate",
            limit: secs(30),
            run: determinant_estimate,
        },
        Check {
            id: "criterion-3",
            title: "hypersurface capture",
            limit: secs(30),
            run: hypersurface_capture,
        },
        Check {
            id: "criterion-4",
            title: "Hilbert identities",
            limit: secs(10),
            run: hilbert_identities,
        },
        Check {
            id: "criterion-5",
            title: "Groebner oracle equivalence",
            limit: secs(60),
            run: groebner_oracle,
        },
        Check {
            id: "criterion-6",
            title: "X_s dimension law",
            limit: secs(300),
            run: xs_dimension_law,
        },
        Check {
            id: "criterion-7",
            title: "optimality of the exponent",
            limit: secs(120),
            run: exponent_optimality,
        },
        Check {
            id: "criterion-8",
            title: "adversarial collapse",
            limit: secs(60),
            run: adversarial_mechanism,
        },
        Check {
            id: "criterion-9",
            title: "transcendence reduction",
            limit: secs(1),
            run: transcendence_reduction,
        },
        Check {
            id: "criterion-10",
            title: "combinators",
            limit: secs(10),
            run: combinators,
        },
    ]
}

/// Checks beyond the numbered criteria.
pub fn extras(opts: &Options) -> Vec<Check> {
    let mut out = vec![Check {
        id: "golden",
        title: "golden files",
        limit: secs(10),
        run: golden_files,
    }];
    if opts.slow {
        out.push(Check {
            id: "slow-xs",
            title: "slow set: X_5 of a smooth cubic",
            limit: secs(120),
            run: slow_xs,
        });
    }
    out
}

pub fn run_check(check: &Check, opts: &Options) -> Outcome {
    let start = Instant::now();
    let result = (check.run)(opts);
    let elapsed = start.elapsed();
    let (mut status, mut detail) = match result {
        Ok(v) => v,
        Err(msg) => (Status::Fail, msg),
    };
    if status == Status::Pass && elapsed > check.limit {
        status = Status::Fail;
        detail = format!("{detail}; over the time limit");
    }
    Outcome {
        id: check.id.to_string(),
        title: check.title,
        status,
        detail,
        elapsed,
        limit: check.limit,
    }
}

/// Runs the criteria and extras; in strict mode stops after the first failure.
pub fn run_suite(opts: &Options, strict: bool) -> Vec<Outcome> {
    let mut checks = criteria();
    checks.extend(extras(opts));
    let wanted = |id: &str| {
        opts.only
            .as_ref()
            .is_none_or(|o| o.iter().any(|w| w == id || format!("criterion-{w}") == id))
    };
    let mut out = Vec::new();
    for c in checks.iter().filter(|c| wanted(c.id)) {
        let o = run_check(c, opts);
        let stop = strict && o.status == Status::Fail;
        out.push(o);
        if stop {
            break;
        }
    }
    out
}

pub fn render_table(outcomes: &[Outcome]) -> String {
    let mut s = String::new();
    for o in outcomes {
        s.push_str(&o.line());
        s.push('\n');
    }
    let failed = outcomes.iter().filter(|o| o.status == Status::Fail).count();
    let skipped = outcomes
        .iter()
        .filter(|o| o.status == Status::Skipped)
        .count();
    s.push_str(&format!(
        "{} checks, {} failed, {} skipped\n",
        outcomes.len(),
        failed,
        skipped
    ));
    s
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn parameter_formulas(_: &Options) -> Result<(Status, String), String> {
    for d in 1..=30u32 {
        let p = dm_parameters(2, 1, d).map_err(err)?;
        ensure(p.e == p.mu * (p.mu - 1) / 2, || {
            format!("d = {d}: e = {} but mu = {}", p.e, p.mu)
        })?;
        // V = sum_k k (k + 1) by direct summation
        let v: u64 = (1..=d as u64).map(|k| k * (k + 1)).sum();
        ensure(p.v == v, || {
            format!("d = {d}: V = {} but direct sum gives {v}", p.v)
        })?;
    }
    let table = ve_ratio_table(2, 1, 30).map_err(err)?;
    ensure(table.windows(2).all(|w| w[1].ratio < w[0].ratio), || {
        "V/e is not decreasing".into()
    })?;
    for row in &table {
        let closed = Scalar::new(8, 3 * (row.d as i64 + 3)).map_err(err)?;
        ensure(row.ratio == closed, || {
            format!(
                "d = {}: V/e = {} but 8/(3(d+3)) = {closed}",
                row.d, row.ratio
            )
        })?;
    }
    let tenth = Scalar::new(1, 10).map_err(err)?;
    let first = first_d_below(&table, &tenth);
    ensure(first == Some(FIRST_D_BELOW_TENTH), || {
        format!("V/e first drops below 1/10 at {first:?}")
    })?;
    Ok((
        Status::Pass,
        format!(
            "e = mu(mu-1)/2 for d = 1..30, V/e decreasing, < 1/10 from d = {FIRST_D_BELOW_TENTH}"
        ),
    ))
}

/// A random center for a fibre mod `t^rho` on `curve`.
fn center(sampler: &mut Sampler, curve: &GraphCurve, rho: u32) -> LaurentPoly {
    sampler.poly(curve.min_ord.max(0), rho as i64 - 1 + curve.min_ord.max(0))
}

fn determinant_estimate(opts: &Options) -> Result<(Status, String), String> {
    let mut sampler = Sampler::new(opts.seed ^ 0x2);
    let curves = [GraphCurve::power(2), GraphCurve::exp_taylor(4)];
    let mut nonzero = 0;
    for k in 0..DET_TRIALS {
        let curve = &curves[k % 2];
        let rho = 1 + (k / 2 % 3) as u32;
        let d = 1 + (k / 6 % 2) as u32;
        let spec = DetTrialSpec {
            d,
            rho,
            center: center(&mut sampler, curve, rho),
            u_degree: (k / 12 % 2) as u32,
        };
        let t = det_trial(curve, &spec, &mut sampler).map_err(err)?;
        ensure(t.tr.pass, || {
            format!("trial {k}: {} is not T_r", curve.name)
        })?;
        ensure(t.order_bound_holds(), || {
            format!(
                "trial {k} on {}: ord(det) = {} < rho e = {}",
                curve.name, t.report.ord, t.certificate.rho_e
            )
        })?;
        nonzero += usize::from(!t.report.det.is_zero());
    }
    Ok((
        Status::Pass,
        format!("{DET_TRIALS} trials, ord(det) >= rho e in all, {nonzero} with det != 0"),
    ))
}

fn hypersurface_capture(opts: &Options) -> Result<(Status, String), String> {
    let mut sampler = Sampler::new(opts.seed ^ 0x3);
    // (curve, d): conics on the parabola, cubics on cubic graphs, and lines
    let setups = [
        (GraphCurve::power(2), 2),
        (GraphCurve::power(3), 3),
        (GraphCurve::exp_taylor(4), 3),
        (GraphCurve::power(2), 1),
    ];
    let mut forced = 0;
    for k in 0..CAPTURE_TRIALS {
        let (curve, d) = &setups[k % setups.len()];
        let rho = 1 + (k / 4 % 3) as u32;
        let spec = DetTrialSpec {
            d: *d,
            rho,
            center: center(&mut sampler, curve, rho),
            // cubic fibres with spread-out offsets cost seconds each
            u_degree: if *d == 3 { 0 } else { (k / 12 % 2) as u32 },
        };
        let t = det_trial(curve, &spec, &mut sampler).map_err(err)?;
        ensure(t.certificate.verdict != Verdict::Violation, || {
            format!("trial {k}: bounds violated")
        })?;
        if t.certificate.verdict == Verdict::ForcedZero {
            forced += 1;
            ensure(t.vanishes == Some(true), || {
                format!("trial {k}: forced zero without a vanishing hypersurface")
            })?;
        }
    }
    ensure(forced > 0, || "no trial reached a forced zero".into())?;
    Ok((Status::Pass, format!("{CAPTURE_TRIALS} trials, {forced} forced zeros, each captured by a vanishing hypersurface")))
}

/// Monomials of degree at most `k` in two variables; zero for `k < 0`.
fn d2(k: i64) -> u64 {
    if k < 0 {
        0
    } else {
        ((k + 1) * (k + 2) / 2) as u64
    }
}

fn hilbert_identities(opts: &Options) -> Result<(Status, String), String> {
    let mut forms: Vec<MultiPoly> = ["x0", "x0*x2 - x1^2", "x1^2*x2 - x0^3 - x0*x2^2"]
        .iter()
        .map(|s| {
            let f: MultiPoly = s.parse().expect("fixed form");
            f.embed(3, &[0, 1, 2][..f.arity()])
                .expect("at most 3 variables")
        })
        .collect();
    let mut sampler = Sampler::new(opts.seed ^ 0x4);
    for deg in 1..=3 {
        for _ in 0..3 {
            forms.push(sampler.homogeneous(3, deg, 4));
        }
    }
    let mut checked = 0;
    for f in &forms {
        let d = f.total_degree().expect("nonzero") as i64;
        let gb = IdealBasis::new(3, vec![f.clone()])
            .and_then(|b| b.groebner())
            .map_err(err)?;
        for r in 1..=12u32 {
            let rec = hilbert_fn(&gb, r).map_err(err)?;
            ensure(rec.identity_holds(), || {
                format!("{f}: r H(r) != sum sigma at r = {r}")
            })?;
            let expected = d2(r as i64) - d2(r as i64 - d);
            ensure(rec.h == expected, || {
                format!("{f}: H({r}) = {} but D_2 difference is {expected}", rec.h)
            })?;
            let total = a_estimates(&gb, r)
                .map_err(err)?
                .iter()
                .fold(Scalar::zero(), |acc, v| acc + v);
            ensure(total.is_one(), || {
                format!("{f}: a-ratios at r = {r} sum to {total}")
            })?;
            checked += 1;
        }
    }
    Ok((
        Status::Pass,
        format!(
            "{} curves of degree 1..3, {checked} (curve, r) pairs",
            forms.len()
        ),
    ))
}

fn groebner_oracle(opts: &Options) -> Result<(Status, String), String> {
    let mut sampler = Sampler::new(opts.seed ^ 0x5);
    let mut compared = 0;
    for k in 0..GROEBNER_TRIALS {
        let arity = 2 + (k % 2);
        let count = sampler.range(1, 3) as usize;
        let gens: Vec<MultiPoly> = (0..count)
            .map(|_| {
                let deg = sampler.range(1, 3) as u32;
                sampler.homogeneous(arity, deg, 3)
            })
            .collect();
        let gb =
            buchberger(&IdealBasis::new(arity, gens.clone()).map_err(err)?, 50_000).map_err(err)?;
        for r in 0..=6 {
            let fast = standard_monomials(&gb, r).map_err(err)?;
            let slow = la_standard_monomials(&gens, arity, r).map_err(err)?;
            ensure(fast.members() == &slow[..], || {
                format!(
                    "ideal {k} at degree {r}: Buchberger {:?} vs linear algebra {:?}",
                    fast.members(),
                    slow
                )
            })?;
            compared += 1;
        }
    }
    Ok((
        Status::Pass,
        format!("{GROEBNER_TRIALS} homogeneous ideals, {compared} degrees agree"),
    ))
}

fn monomial_curve(d: u32) -> CurveSpec {
    CurveSpec::algebraic(format!("x1 - x0^{d}").parse().expect("fixed curve")).expect("nonconstant")
}

fn xs_dimension_law(_: &Options) -> Result<(Status, String), String> {
    let mut ok = 0;
    let mut over = Vec::new();
    for d in 1..=3u32 {
        let curve = monomial_curve(d);
        for s in 1..=6u32 {
            let closed = ((s - 1) / d + 1) as i64;
            match xs_dimension(&curve, s) {
                Ok(dim) => {
                    ensure(dim == closed, || {
                        format!("d = {d}, s = {s}: dimension {dim}, closed form {closed}")
                    })?;
                    ok += 1;
                }
                Err(Error::BudgetExceeded { .. }) => over.push(format!("(d = {d}, s = {s})")),
                Err(e) => return Err(err(e)),
            }
        }
    }
    ensure(ok >= XS_CELLS_REQUIRED, || {
        format!(
            "only {ok} of 18 cells finished: over budget {}",
            over.join(" ")
        )
    })?;
    let mut detail = format!("{ok} of 18 cells match floor((s-1)/d) + 1");
    if !over.is_empty() {
        detail.push_str(&format!("; over budget {}", over.join(" ")));
    }
    Ok((Status::Pass, detail))
}

fn exponent_optimality(_: &Options) -> Result<(Status, String), String> {
    let curve = monomial_curve(2);
    let x = WitnessMap::Projection(0);
    for s in 1..=3u32 {
        let s2 = 2 * s + 1;
        for e in 1..=s {
            let rep = cdim_witness_check(&curve, s2, &x, e, &FiberMode::Symbolic).map_err(err)?;
            ensure(rep.fiber.is_infinite(), || {
                format!(
                    "s' = {s2}, e = {e}: expected an infinite fibre, got {}",
                    rep.fiber
                )
            })?;
        }
        let sharp = s2.div_ceil(2);
        let rep = cdim_witness_check(&curve, s2, &x, sharp, &FiberMode::Symbolic).map_err(err)?;
        ensure(rep.fiber == FiberBound::Finite(1), || {
            format!(
                "s' = {s2}, e = {sharp}: expected fibres of size 1, got {}",
                rep.fiber
            )
        })?;
    }
    Ok((
        Status::Pass,
        "s' = 3, 5, 7: infinite fibre for e <= s, fibres of size 1 at e = ceil(s'/2)".into(),
    ))
}

fn adversarial_mechanism(_: &Options) -> Result<(Status, String), String> {
    let params = AdversarialParams::new(vec![1, 7], vec![2, 3], 2).map_err(err)?;
    let mut args = 0;
    for n in 0..2 {
        for (i, j, l) in params.in_range_arguments(n) {
            let x = LaurentPoly::from_terms([
                (0, Scalar::from_int(i as i64)),
                (l as i64, Scalar::from_int(j as i64)),
            ]);
            let v = adversarial_eval(&params, &x).map_err(err)?;
            ensure(v.ord_t().at_least(0), || {
                format!("f({x}) = {v} is not in Q[t]")
            })?;
            args += 1;
        }
    }
    let s = minimal_height(&params, 1).map_err(err)?;
    for e in 1..=7 {
        let rep = adversarial_collapse_check(&params, 1, s, e).map_err(err)?;
        ensure(rep.fiber_size == 3 && rep.points.len() == 3, || {
            format!("|S| = {}", rep.fiber_size)
        })?;
        ensure(rep.in_cs && rep.collapsed, || {
            format!("e = {e}: S does not collapse in C_{s}")
        })?;
        // independent check of membership and residues
        for (x, y) in &rep.points {
            ensure(
                x.degree() < Some(s as i64) && y.degree() < Some(s as i64),
                || format!("{y} has degree >= {s}"),
            )?;
            ensure(
                x.truncate_below(e as i64) == LaurentPoly::from_ints(&[7]),
                || format!("{x} mod t^{e} is not 7"),
            )?;
        }
        ensure(rep.degrees_within_chain(), || {
            format!(
                "degree {} above the chain bound {}",
                rep.max_degree, rep.chain_bound
            )
        })?;
    }
    Ok((
        Status::Pass,
        format!("{args} in-range values in Q[t]; |S| = 3 in C_{s}, one class mod t^e for e = 1..7"),
    ))
}

fn transcendence_reduction(_: &Options) -> Result<(Status, String), String> {
    let step = transcendence_reduction_step(&"x1 - x0".parse().expect("fixed")).map_err(err)?;
    let expected = "x0 - 1"
        .parse::<MultiPoly>()
        .expect("fixed")
        .embed(2, &[0])
        .map_err(err)?;
    ensure(step.g == expected, || format!("g = {}", step.g))?;
    ensure(step.identity_holds(8).map_err(err)?, || {
        "identity fails at order 8".into()
    })?;
    Ok((
        Status::Pass,
        "y - x reduces to x - 1; identity exact to order 8".into(),
    ))
}

fn combinators(_: &Options) -> Result<(Status, String), String> {
    let b = CDimBound::new;
    ensure(b(1, 1, 1).union(&b(1, 1, 1)) == b(2, 1, 1), || {
        "union rule".into()
    })?;
    ensure(b(2, 1, 3).product(&b(3, 2, 1)) == b(6, 3, 3), || {
        "product rule".into()
    })?;
    ensure(b(2, 1, 5).pullback(4) == b(8, 1, 5), || {
        "pullback rule".into()
    })?;

    let parabola: MultiPoly = "x1 - x0^2".parse().expect("fixed");
    let root: MultiPoly = "x1^2 - x0".parse().expect("fixed");
    let x_mod = |e: usize| move |p: &(F5Poly, F5Poly)| p.0.residue(e);
    let mut cases = 0;
    for s in 1..=2usize {
        let xa = curve_points_f5(&parabola, s).map_err(err)?;
        let xb = curve_points_f5(&root, s).map_err(err)?;
        let mut both = xa.clone();
        both.extend(xb.iter().filter(|p| !xa.contains(p)).cloned());
        for e in 1..=s {
            for e2 in 1..=s {
                let big_e = e.max(e2);
                let wa = b(max_fibre(&xa, x_mod(e)), 1, e as u64);
                let wb = b(max_fibre(&xb, x_mod(e2)), 1, e2 as u64);

                let u = wa.union(&wb);
                let seen = max_fibre(&both, x_mod(big_e));
                ensure(u.e == big_e as u64 && seen <= u.n, || {
                    format!("union at s = {s}: fibre {seen} > {}", u.n)
                })?;

                let pairs: Vec<_> = xa
                    .iter()
                    .flat_map(|p| xb.iter().map(move |q| (p, q)))
                    .collect();
                let p = wa.product(&wb);
                let seen = max_fibre(&pairs, |(a, c)| (a.0.residue(big_e), c.0.residue(big_e)));
                ensure(p.d == 2 && seen <= p.n, || {
                    format!("product at s = {s}: fibre {seen} > {}", p.n)
                })?;
                if e == e2 {
                    ensure(seen == p.n, || {
                        format!("product at s = {s}: fibre {seen} != {}", p.n)
                    })?;
                }
                cases += 2;
            }
            // pullback along (u, v) -> (v, v^2) from y^2 = x onto y = x^2
            let image: Vec<(F5Poly, F5Poly)> =
                xb.iter().map(|(_, v)| (v.clone(), v.pow(2))).collect();
            let fibre = max_fibre(&image, |q| q.clone());
            let mut distinct = image.clone();
            distinct.sort();
            distinct.dedup();
            let on_image = b(max_fibre(&distinct, x_mod(e)), 1, e as u64);
            let pb = on_image.pullback(fibre);
            let seen = max_fibre(&image, x_mod(e));
            ensure(seen <= pb.n, || {
                format!("pullback at s = {s}, e = {e}: fibre {seen} > {}", pb.n)
            })?;
            cases += 1;
        }
    }
    Ok((
        Status::Pass,
        format!("three tabulated rules; {cases} brute-force F_5 cases with s <= 2"),
    ))
}

fn diff(expected: &str, actual: &str) -> Option<String> {
    let (mut a, mut b) = (expected.lines(), actual.lines());
    for line in 1.. {
        match (a.next(), b.next()) {
            (None, None) => return None,
            (x, y) if x == y => continue,
            (x, y) => {
                return Some(format!(
                    "line {line}: expected {:?}, got {:?}",
                    x.unwrap_or("<eof>"),
                    y.unwrap_or("<eof>")
                ))
            }
        }
    }
    unreachable!()
}

/// Golden artifacts: file name, subcommand, parameters.
pub const GOLDEN: [(&str, Subcommand, &[&str]); 2] = [
    (
        "params.csv",
        Subcommand::Params,
        &["n=2", "m=1", "d_max=10"],
    ),
    (
        "xsdim.csv",
        Subcommand::Xsdim,
        &["curve=x1 - x0^2", "s_min=1", "s_max=5"],
    ),
];

fn golden_files(opts: &Options) -> Result<(Status, String), String> {
    for (name, sub, args) in GOLDEN {
        let mut cfg = ExperimentConfig::new(sub);
        for a in args {
            cfg.params.set_arg(a).map_err(|e| e.to_string())?;
        }
        let out = crate::run::run(&cfg, true).map_err(|e| e.to_string())?;
        let actual = &out.artifacts[0].contents;
        let path = opts.golden_dir.join(name);
        let expected =
            std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        if let Some(d) = diff(&expected, actual) {
            return Err(format!("{} differs at {d}", path.display()));
        }
    }
    Ok((Status::Pass, format!("{} golden files match", GOLDEN.len())))
}

/// Budget for the optional slow instance.
const SLOW_BUDGET: usize = 300;

fn slow_xs(_: &Options) -> Result<(Status, String), String> {
    let curve = CurveSpec::algebraic("x1^2 - x0^3 - x0".parse().expect("fixed")).map_err(err)?;
    let xs = xs_ideal(&curve, 5).map_err(err)?;
    match buchberger(&xs.basis, SLOW_BUDGET) {
        Ok(gb) => {
            let dim = variety_dimension(&gb).map_err(err)?;
            Ok((Status::Pass, format!("dimension {dim}")))
        }
        Err(Error::BudgetExceeded { budget }) => Ok((
            Status::Skipped,
            format!("over the budget of {budget} pair reductions"),
        )),
        Err(e) => Err(err(e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diffs_name_the_first_bad_line() {
        assert_eq!(diff("a\nb\n", "a\nb\n"), None);
        assert_eq!(
            diff("a\nb\n", "a\nc\n").unwrap(),
            r#"line 2: expected "b", got "c""#
        );
        assert_eq!(
            diff("a\n", "a\nb\n").unwrap(),
            r#"line 2: expected "<eof>", got "b""#
        );
    }

    #[test]
    fn corrupted_golden_files_fail() {
        let dir = std::env::temp_dir().join(format!("countdim-golden-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let src = Options::default().golden_dir;
        for (name, _, _) in GOLDEN {
            std::fs::copy(src.join(name), dir.join(name)).unwrap();
        }
        let opts = Options {
            golden_dir: dir.clone(),
            ..Options::default()
        };
        assert!(golden_files(&opts).is_ok());
        std::fs::write(dir.join("xsdim.csv"), "s,dim\n1,1\n2,2\n").unwrap();
        let msg = golden_files(&opts).unwrap_err();
        assert!(msg.contains("line 3"), "{msg}");
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn quick_criteria_pass() {
        let opts = Options::default();
        for c in criteria()
            .iter()
            .filter(|c| ["criterion-1", "criterion-9", "criterion-10"].contains(&c.id))
        {
            let o = run_check(c, &opts);
            assert_eq!(o.status, Status::Pass, "{}", o.line());
        }
    }

    #[test]
    fn slow_set_skips_on_budget() {
        let o = run_check(
            &extras(&Options {
                slow: true,
                ..Options::default()
            })[1],
            &Options::default(),
        );
        assert_eq!(o.status, Status::Skipped, "{}", o.line());
    }
}
