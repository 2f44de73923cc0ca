//! Subcommand dispatch: each subcommand parses its parameters, calls one
//! library operation per item, and serializes the results.

use countdim_core::curves::{
    adversarial_collapse_check, adversarial_eval, cdim_witness_check, exp_graph_check,
    minimal_height, transcendence_reduction_step, xs_dimension, AdversarialParams, CurveSpec,
    FiberMode, WitnessMap,
};
use countdim_core::groebner::{
    a_estimates, buchberger, hilbert_fn, IdealBasis, MultiPoly, DEFAULT_PAIR_BUDGET,
};
use countdim_core::monomial::ve_ratio_table;
use countdim_core::{Error, LaurentPoly, ResidueClass, Scalar};

use crate::config::{CurveFile, ExperimentConfig, Params, Subcommand};
use crate::detmethod::{det_trial, DetTrialSpec};
use crate::error::{CliError, CliResult};
use crate::report::{
    to_csv, to_json, AdversarialView, CdimView, CollapseView, DetTrialView, ExpGraphView,
    HilbertReport, HilbertRow, ParamsRow, ReductionView, XsRow,
};
use crate::sample::{GraphCurve, Sampler};
use crate::suite;

/// A named output file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

impl Artifact {
    fn new(name: &str, contents: String) -> Self {
        Artifact {
            name: name.to_string(),
            contents,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    CheckFailed(String),
    BudgetExceeded(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub artifacts: Vec<Artifact>,
    pub status: Status,
}

impl RunOutput {
    fn ok(artifacts: Vec<Artifact>) -> Self {
        RunOutput {
            artifacts,
            status: Status::Ok,
        }
    }

    fn with_failures(artifacts: Vec<Artifact>, failures: Vec<String>) -> Self {
        let status = if failures.is_empty() {
            Status::Ok
        } else {
            Status::CheckFailed(failures.join("; "))
        };
        RunOutput { artifacts, status }
    }
}

/// Runs one experiment. `strict` turns a budget overrun into an immediate
/// error and, for `verify`, stops at the first failing check.
pub fn run(config: &ExperimentConfig, strict: bool) -> CliResult<RunOutput> {
    let p = &config.params;
    match config.subcommand {
        Subcommand::Params => params(p),
        Subcommand::Hilbert => hilbert(p),
        Subcommand::Detmethod => detmethod(p, config.seed),
        Subcommand::Xsdim => xsdim(p, strict),
        Subcommand::Cdim => cdim(p, strict),
        Subcommand::Adversarial => adversarial(p),
        Subcommand::Expgraph => expgraph(p, config.seed),
        Subcommand::Verify => verify(p, config.seed, strict),
    }
}

fn range(
    p: &Params,
    lo_key: &str,
    hi_key: &str,
    lo: u32,
    hi: u32,
) -> CliResult<std::ops::RangeInclusive<u32>> {
    let (lo, hi) = (p.u32_or(lo_key, lo)?, p.u32_or(hi_key, hi)?);
    if lo > hi {
        return Err(CliError::Usage(format!(
            "{lo_key} = {lo} exceeds {hi_key} = {hi}"
        )));
    }
    Ok(lo..=hi)
}

fn params(p: &Params) -> CliResult<RunOutput> {
    p.expect_only(&["n", "m", "d_max"])?;
    let n = p.u64_or("n", 2)? as usize;
    let m = p.u64_or("m", 1)? as usize;
    let d_max = p.u32_or("d_max", 10)?;
    let rows: Vec<ParamsRow> = ve_ratio_table(n, m, d_max)?
        .iter()
        .map(ParamsRow::from)
        .collect();
    Ok(RunOutput::ok(vec![Artifact::new(
        "params.csv",
        to_csv(&rows),
    )]))
}

fn parse_ideal(p: &Params) -> CliResult<IdealBasis> {
    let srcs = p
        .strings("ideal")?
        .unwrap_or_else(|| vec!["x0*x2 - x1^2".into()]);
    let gens = srcs
        .iter()
        .map(|s| p.poly("ideal", s))
        .collect::<CliResult<Vec<MultiPoly>>>()?;
    let arity = gens.iter().map(MultiPoly::arity).max().unwrap_or(0);
    let gens = gens
        .iter()
        .map(|g| g.embed(arity, &(0..g.arity()).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IdealBasis::new(arity, gens)?)
}

fn hilbert(p: &Params) -> CliResult<RunOutput> {
    p.expect_only(&["ideal", "r_min", "r_max", "budget"])?;
    let basis = parse_ideal(p)?;
    let budget = p.u64_or("budget", DEFAULT_PAIR_BUDGET as u64)? as usize;
    let gb = buchberger(&basis, budget)?;
    let mut records = Vec::new();
    let mut failures = Vec::new();
    for r in range(p, "r_min", "r_max", 1, 8)? {
        let rec = hilbert_fn(&gb, r)?;
        let a = if r > 0 && rec.h > 0 {
            let a = a_estimates(&gb, r)?;
            let total = a.iter().fold(Scalar::zero(), |acc, v| acc + v);
            if !total.is_one() {
                failures.push(format!("a-ratios at r = {r} sum to {total}"));
            }
            a.iter().map(ToString::to_string).collect()
        } else {
            Vec::new()
        };
        if !rec.identity_holds() {
            failures.push(format!("r H(r) != sum sigma_i(r) at r = {r}"));
        }
        records.push(HilbertRow::new(&rec, a));
    }
    let report = HilbertReport {
        generators: basis.generators().iter().map(ToString::to_string).collect(),
        groebner_basis: gb.generators().iter().map(ToString::to_string).collect(),
        records,
    };
    Ok(RunOutput::with_failures(
        vec![Artifact::new("hilbert.json", to_json(&report))],
        failures,
    ))
}

fn detmethod(p: &Params, seed: u64) -> CliResult<RunOutput> {
    p.expect_only(&["curve", "d", "rho", "center", "u_degree", "trials"])?;
    let file = p.curve_or("curve", "x1 - x0^2")?;
    let curve = GraphCurve::from_file(&file)?;
    let default_center = if matches!(file, CurveFile::Exp { .. }) {
        "t"
    } else {
        "1"
    };
    let spec = DetTrialSpec {
        d: p.u32_or("d", 2)?,
        rho: p.u32_or("rho", 2)?,
        center: p.laurent_or("center", default_center)?,
        u_degree: p.u32_or("u_degree", 1)?,
    };
    if spec.rho == 0 {
        return Err(CliError::Usage("rho must be at least 1".into()));
    }
    let mut sampler = Sampler::new(seed);
    let mut views = Vec::new();
    let mut failures = Vec::new();
    for k in 0..p.u64_or("trials", 1)? {
        let t = det_trial(&curve, &spec, &mut sampler)?;
        if t.certificate.hypotheses && !t.order_bound_holds() {
            failures.push(format!(
                "trial {k}: ord(det) = {} < rho e = {}",
                t.report.ord, t.certificate.rho_e
            ));
        }
        if !t.certificate.upper_bound_ok {
            failures.push(format!("trial {k}: degree budget exceeded"));
        }
        if t.vanishes == Some(false) {
            failures.push(format!("trial {k}: hypersurface misses a point"));
        }
        views.push(DetTrialView::new(&curve.name, spec.rho, &t));
    }
    Ok(RunOutput::with_failures(
        vec![Artifact::new("detmethod.json", to_json(&views))],
        failures,
    ))
}

fn algebraic(p: &Params) -> CliResult<CurveSpec> {
    let spec = p.curve_or("curve", "x1 - x0^2")?.to_spec()?;
    Ok(spec)
}

fn xsdim(p: &Params, strict: bool) -> CliResult<RunOutput> {
    p.expect_only(&["curve", "s_min", "s_max"])?;
    let curve = algebraic(p)?;
    let mut rows = Vec::new();
    let mut over = Vec::new();
    for s in range(p, "s_min", "s_max", 1, 5)? {
        let dim = match xs_dimension(&curve, s) {
            Ok(d) => d.to_string(),
            Err(Error::BudgetExceeded { budget }) if !strict => {
                over.push(format!("s = {s} exceeded {budget} pair reductions"));
                "budget".to_string()
            }
            Err(e) => return Err(e.into()),
        };
        rows.push(XsRow { s, dim });
    }
    let artifacts = vec![Artifact::new("xsdim.csv", to_csv(&rows))];
    Ok(RunOutput {
        artifacts,
        status: if over.is_empty() {
            Status::Ok
        } else {
            Status::BudgetExceeded(over.join("; "))
        },
    })
}

fn witness_map(p: &Params) -> CliResult<WitnessMap> {
    match p.strings("map")? {
        None => Ok(WitnessMap::Projection(0)),
        Some(v) if v.len() == 1 && v[0] == "x" => Ok(WitnessMap::Projection(0)),
        Some(v) if v.len() == 1 && v[0] == "y" => Ok(WitnessMap::Projection(1)),
        Some(v) => Ok(WitnessMap::Polynomial(
            v.iter()
                .map(|s| p.poly("map", s))
                .collect::<CliResult<_>>()?,
        )),
    }
}

fn cdim(p: &Params, strict: bool) -> CliResult<RunOutput> {
    p.expect_only(&["curve", "s_min", "s_max", "map", "e", "e_div", "class"])?;
    let curve = algebraic(p)?;
    let map = witness_map(p)?;
    let fixed_e = p.opt_u32("e")?;
    let e_div = p.opt_u32("e_div")?;
    if e_div == Some(0) {
        return Err(CliError::Usage("e_div must be at least 1".into()));
    }
    let classes = p
        .strings("class")?
        .map(|v| {
            v.iter()
                .map(|s| {
                    s.parse::<LaurentPoly>()
                        .map_err(|e| CliError::in_param("class", e))
                })
                .collect::<CliResult<Vec<_>>>()
        })
        .transpose()?;
    let mut views = Vec::new();
    let mut over = Vec::new();
    for s in range(p, "s_min", "s_max", 1, 4)? {
        let e = match (fixed_e, e_div) {
            (Some(e), _) => e,
            (None, Some(k)) => s.div_ceil(k),
            (None, None) => s,
        };
        let mode = match &classes {
            None => FiberMode::Symbolic,
            Some(reps) => FiberMode::Concrete(
                reps.iter()
                    .map(|r| ResidueClass::of_poly(r, e))
                    .collect::<Result<_, _>>()?,
            ),
        };
        match cdim_witness_check(&curve, s, &map, e, &mode) {
            Ok(rep) => views.push(CdimView::from(&rep)),
            Err(Error::BudgetExceeded { budget }) if !strict => {
                over.push(format!("s = {s} exceeded {budget} pair reductions"))
            }
            Err(err) => return Err(err.into()),
        }
    }
    let csv_rows: Vec<_> = views
        .iter()
        .map(|v| CdimCsv {
            s: v.s,
            e: v.e,
            xs_dim: v.xs_dimension,
            fiber: v
                .max_finite_fiber
                .map_or("inf".to_string(), |n| n.to_string()),
        })
        .collect();
    Ok(RunOutput {
        artifacts: vec![
            Artifact::new("cdim.json", to_json(&views)),
            Artifact::new("cdim.csv", to_csv(&csv_rows)),
        ],
        status: if over.is_empty() {
            Status::Ok
        } else {
            Status::BudgetExceeded(over.join("; "))
        },
    })
}

#[derive(serde::Serialize)]
struct CdimCsv {
    s: u32,
    e: u32,
    xs_dim: i64,
    fiber: String,
}

fn adversarial(p: &Params) -> CliResult<RunOutput> {
    p.expect_only(&["n_seq", "f_vals", "truncation", "n", "s", "e_max"])?;
    let n_seq = p.u64_list("n_seq")?.unwrap_or_else(|| vec![1, 7]);
    let f_vals = p.u64_list("f_vals")?.unwrap_or_else(|| vec![2, 3]);
    let truncation = p.u64_or("truncation", n_seq.len() as u64)? as usize;
    let params = AdversarialParams::new(n_seq, f_vals, truncation)?;
    let n = p.u64_or("n", truncation as u64 - 1)? as usize;
    let s = match p.opt_u32("s")? {
        Some(s) => s,
        None => minimal_height(&params, n)?,
    };
    let big_n = *params
        .n_seq()
        .get(n)
        .ok_or_else(|| CliError::Usage(format!("index n = {n} is beyond the sequence")))?;
    let e_max = p.u32_or("e_max", big_n as u32)?;
    let mut arguments_checked = Vec::new();
    let mut values_polynomial = true;
    for k in 0..params.truncation() {
        let mut count = 0;
        for (i, j, l) in params.in_range_arguments(k) {
            let x = LaurentPoly::from_terms([
                (0, Scalar::from_int(i as i64)),
                (l as i64, Scalar::from_int(j as i64)),
            ]);
            values_polynomial &= adversarial_eval(&params, &x)?.ord_t().at_least(0);
            count += 1;
        }
        arguments_checked.push(count);
    }
    let mut collapse = Vec::new();
    let mut failures = Vec::new();
    if !values_polynomial {
        failures.push("some in-range value is not a polynomial".to_string());
    }
    for e in 1..=e_max {
        let rep = adversarial_collapse_check(&params, n, s, e)?;
        if !rep.collapsed {
            failures.push(format!("points do not collapse mod t^{e}"));
        }
        collapse.push(CollapseView::from(&rep));
    }
    let view = AdversarialView {
        arguments_checked,
        values_polynomial,
        collapse,
    };
    Ok(RunOutput::with_failures(
        vec![Artifact::new("adversarial.json", to_json(&view))],
        failures,
    ))
}

fn expgraph(p: &Params, seed: u64) -> CliResult<RunOutput> {
    p.expect_only(&["s", "prec", "samples", "count", "relation", "order"])?;
    let s = p.u32_or("s", 3)?;
    let prec = p.u64_or("prec", s as u64 + 3)? as i64;
    let samples = match p.strings("samples")? {
        Some(v) => v
            .iter()
            .map(|x| {
                x.parse::<LaurentPoly>()
                    .map_err(|e| CliError::in_param("samples", e))
            })
            .collect::<CliResult<Vec<_>>>()?,
        None => {
            let mut sampler = Sampler::new(seed);
            (0..p.u64_or("count", 5)?)
                .map(|_| sampler.poly(1, s as i64 - 1))
                .collect()
        }
    };
    let rep = exp_graph_check(s, prec, &samples)?;
    let mut failures = Vec::new();
    let reduction = match p.get("relation") {
        None => None,
        Some(_) => {
            let f = p.poly("relation", p.str_or("relation", "")?)?;
            let order = p.u64_or("order", 8)? as i64;
            let step = transcendence_reduction_step(&f)?;
            let holds = step.identity_holds(order)?;
            if !holds {
                failures.push(format!("reduction identity fails below t^{order}"));
            }
            Some(ReductionView::new(&step, order, holds))
        }
    };
    let view = ExpGraphView::new(&rep, reduction);
    Ok(RunOutput::with_failures(
        vec![Artifact::new("expgraph.json", to_json(&view))],
        failures,
    ))
}

fn verify(p: &Params, seed: u64, strict: bool) -> CliResult<RunOutput> {
    p.expect_only(&["only", "slow", "golden_dir"])?;
    let mut opts = suite::Options {
        seed,
        slow: p.bool_or("slow", false)?,
        ..suite::Options::default()
    };
    if let Some(dir) = p.get("golden_dir") {
        let dir = dir
            .as_str()
            .ok_or_else(|| CliError::Usage("golden_dir must be a path".into()))?;
        opts.golden_dir = dir.into();
    }
    opts.only = match p.get("only") {
        None => None,
        Some(serde_json::Value::Array(v)) => Some(
            v.iter()
                .map(|x| x.to_string().trim_matches('"').to_string())
                .collect(),
        ),
        Some(v) => Some(vec![v.to_string().trim_matches('"').to_string()]),
    };
    let outcomes = suite::run_suite(&opts, strict);
    let table = suite::render_table(&outcomes);
    let failures: Vec<String> = outcomes
        .iter()
        .filter(|o| o.status == suite::Status::Fail)
        .map(|o| format!("{} failed", o.id))
        .collect();
    Ok(RunOutput::with_failures(
        vec![Artifact::new("verify.txt", table)],
        failures,
    ))
}
