//! Experiment configuration: a subcommand, a flat parameter map, a seed and
//! an output directory. Values come from a JSON file, from `key=value`
//! arguments, or both (arguments win).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use countdim_core::curves::{AdversarialParams, CurveSpec, SeriesGraph};
use countdim_core::groebner::MultiPoly;
use countdim_core::{LaurentPoly, Scalar};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Subcommand {
    Params,
    Hilbert,
    Detmethod,
    Xsdim,
    Cdim,
    Adversarial,
    Expgraph,
    Verify,
}

impl Subcommand {
    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Params => "params",
            Subcommand::Hilbert => "hilbert",
            Subcommand::Detmethod => "detmethod",
            Subcommand::Xsdim => "xsdim",
            Subcommand::Cdim => "cdim",
            Subcommand::Adversarial => "adversarial",
            Subcommand::Expgraph => "expgraph",
            Subcommand::Verify => "verify",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub subcommand: Subcommand,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(subcommand: Subcommand) -> Self {
        ExperimentConfig {
            subcommand,
            params: Params::default(),
            seed: 0,
            output: None,
        }
    }

    pub fn from_json(src: &str) -> CliResult<Self> {
        serde_json::from_str(src).map_err(|e| CliError::Parse {
            param: "config".into(),
            pos: None,
            msg: format!("line {} column {}: {e}", e.line(), e.column()),
        })
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&src)
    }
}

/// Parameter values keyed by name. Keys are kept sorted so that reports
/// echoing them are stable.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Params(BTreeMap<String, Value>);

impl Params {
    pub fn set(&mut self, key: &str, value: Value) {
        self.0.insert(key.to_string(), value);
    }

    /// Parses `key=value`; the value is read as JSON when it is valid JSON
    /// and as a plain string otherwise.
    pub fn set_arg(&mut self, arg: &str) -> CliResult<()> {
        let (k, v) = arg
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected key=value, got '{arg}'")))?;
        let k = k.trim();
        if k.is_empty() {
            return Err(CliError::Usage(format!("empty key in '{arg}'")));
        }
        let value = serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.to_string()));
        self.set(k, value);
        Ok(())
    }

    pub fn merge(&mut self, other: &Params) {
        for (k, v) in &other.0 {
            self.0.insert(k.clone(), v.clone());
        }
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.0.get(key)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }

    /// Fails on keys outside `allowed`, catching typos.
    pub fn expect_only(&self, allowed: &[&str]) -> CliResult<()> {
        match self.keys().find(|k| !allowed.contains(k)) {
            Some(k) => Err(CliError::Usage(format!(
                "unknown parameter '{k}' (expected one of: {})",
                allowed.join(", ")
            ))),
            None => Ok(()),
        }
    }

    fn bad(key: &str, msg: impl Into<String>) -> CliError {
        CliError::Parse {
            param: key.to_string(),
            pos: None,
            msg: msg.into(),
        }
    }

    pub fn u64_or(&self, key: &str, default: u64) -> CliResult<u64> {
        match self.get(key) {
            None => Ok(default),
            Some(Value::Number(n)) => n
                .as_u64()
                .ok_or_else(|| Self::bad(key, format!("expected a nonnegative integer, got {n}"))),
            Some(Value::String(s)) => s
                .trim()
                .parse()
                .map_err(|_| Self::bad(key, format!("expected a nonnegative integer, got '{s}'"))),
            Some(v) => Err(Self::bad(
                key,
                format!("expected a nonnegative integer, got {v}"),
            )),
        }
    }

    pub fn u32_or(&self, key: &str, default: u32) -> CliResult<u32> {
        let v = self.u64_or(key, default as u64)?;
        u32::try_from(v).map_err(|_| Self::bad(key, format!("{v} is too large")))
    }

    pub fn opt_u32(&self, key: &str) -> CliResult<Option<u32>> {
        match self.get(key) {
            None => Ok(None),
            Some(_) => self.u32_or(key, 0).map(Some),
        }
    }

    pub fn bool_or(&self, key: &str, default: bool) -> CliResult<bool> {
        match self.get(key) {
            None => Ok(default),
            Some(Value::Bool(b)) => Ok(*b),
            Some(v) => Err(Self::bad(key, format!("expected true or false, got {v}"))),
        }
    }

    pub fn str_or<'a>(&'a self, key: &str, default: &'a str) -> CliResult<&'a str> {
        match self.get(key) {
            None => Ok(default),
            Some(Value::String(s)) => Ok(s),
            Some(v) => Err(Self::bad(key, format!("expected a string, got {v}"))),
        }
    }

    /// A list of strings; a single string counts as a one-element list.
    pub fn strings(&self, key: &str) -> CliResult<Option<Vec<String>>> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(vec![s.clone()])),
            Some(Value::Array(items)) => items
                .iter()
                .map(|v| match v {
                    Value::String(s) => Ok(s.clone()),
                    other => Err(Self::bad(key, format!("expected strings, got {other}"))),
                })
                .collect::<CliResult<_>>()
                .map(Some),
            Some(v) => Err(Self::bad(
                key,
                format!("expected a list of strings, got {v}"),
            )),
        }
    }

    pub fn u64_list(&self, key: &str) -> CliResult<Option<Vec<u64>>> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Array(items)) => items
                .iter()
                .map(|v| {
                    v.as_u64()
                        .ok_or_else(|| Self::bad(key, format!("expected integers, got {v}")))
                })
                .collect::<CliResult<_>>()
                .map(Some),
            Some(v) => Err(Self::bad(key, format!("expected an integer list, got {v}"))),
        }
    }

    pub fn scalar_or(&self, key: &str, default: Scalar) -> CliResult<Scalar> {
        match self.get(key) {
            None => Ok(default),
            Some(Value::Number(n)) => n
                .to_string()
                .parse()
                .map_err(|e| CliError::in_param(key, e)),
            Some(Value::String(s)) => s.parse().map_err(|e| CliError::in_param(key, e)),
            Some(v) => Err(Self::bad(key, format!("expected a rational, got {v}"))),
        }
    }

    pub fn laurent_or(&self, key: &str, default: &str) -> CliResult<LaurentPoly> {
        let src = match self.get(key) {
            None => default.to_string(),
            Some(Value::String(s)) => s.clone(),
            Some(Value::Number(n)) => n.to_string(),
            Some(v) => {
                return Err(Self::bad(
                    key,
                    format!("expected a polynomial in t, got {v}"),
                ))
            }
        };
        src.parse().map_err(|e| CliError::in_param(key, e))
    }

    pub fn poly(&self, key: &str, src: &str) -> CliResult<MultiPoly> {
        src.parse().map_err(|e| CliError::in_param(key, e))
    }

    /// A curve given inline as an object, as a path to a JSON curve file,
    /// or as a bare polynomial string `F(x0, x1)`.
    pub fn curve_or(&self, key: &str, default: &str) -> CliResult<CurveFile> {
        match self.get(key) {
            None => CurveFile::from_poly(key, default),
            Some(Value::Object(_)) => {
                serde_json::from_value(self.get(key).cloned().expect("present"))
                    .map_err(|e| Self::bad(key, e.to_string()))
            }
            Some(Value::String(s)) if s.ends_with(".json") => CurveFile::load(Path::new(s)),
            Some(Value::String(s)) => CurveFile::from_poly(key, s),
            Some(v) => Err(Self::bad(key, format!("expected a curve, got {v}"))),
        }
    }
}

/// Curve specification as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveFile {
    /// `F(x, y) = 0` in the polynomial text format (`x0 = x`, `x1 = y`, or
    /// a `vars x, y;` header).
    Algebraic { f: String },
    /// The graph of `exp` on `t k[[t]]`. Point sampling uses the Taylor
    /// polynomial with `terms` terms.
    Exp {
        #[serde(default = "default_exp_terms")]
        terms: u32,
    },
    Adversarial {
        n_seq: Vec<u64>,
        f_vals: Vec<u64>,
        truncation: usize,
    },
}

fn default_exp_terms() -> u32 {
    4
}

impl CurveFile {
    fn from_poly(key: &str, src: &str) -> CliResult<CurveFile> {
        if src == "exp" {
            return Ok(CurveFile::Exp {
                terms: default_exp_terms(),
            });
        }
        // validate now so the parse location refers to this parameter
        let _: MultiPoly = src.parse().map_err(|e| CliError::in_param(key, e))?;
        Ok(CurveFile::Algebraic { f: src.to_string() })
    }

    pub fn load(path: &Path) -> CliResult<CurveFile> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&src).map_err(|e| CliError::Parse {
            param: path.display().to_string(),
            pos: None,
            msg: format!("line {} column {}: {e}", e.line(), e.column()),
        })
    }

    pub fn to_spec(&self) -> CliResult<CurveSpec> {
        Ok(match self {
            CurveFile::Algebraic { f } => {
                let f: MultiPoly = f.parse().map_err(|e| CliError::in_param("curve.f", e))?;
                CurveSpec::algebraic(f)?
            }
            CurveFile::Exp { .. } => CurveSpec::SeriesGraph(SeriesGraph::exp()),
            CurveFile::Adversarial {
                n_seq,
                f_vals,
                truncation,
            } => CurveSpec::Adversarial(AdversarialParams::new(
                n_seq.clone(),
                f_vals.clone(),
                *truncation,
            )?),
        })
    }
}
