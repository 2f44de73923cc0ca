use std::io::Write;
use std::path::PathBuf;

use clap::Parser;

use crate::config::{ExperimentConfig, Params, Subcommand};
use crate::error::{CliError, CliResult, EXIT_BUDGET, EXIT_CHECK, EXIT_OK, EXIT_USAGE};
use crate::run::{run, RunOutput, Status};

/// Exact experiments on points of bounded height over Q((t)).
#[derive(Debug, Parser)]
#[command(name = "countdim", version)]
pub struct Cli {
    /// Subcommand; may instead come from the config file.
    #[arg(value_enum)]
    pub subcommand: Option<Subcommand>,
    /// Parameters as key=value; values are read as JSON when possible.
    pub params: Vec<String>,
    /// Experiment config (JSON).
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Directory for report files; without it the reports go to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Stop at the first failure and treat budget overruns as errors.
    #[arg(long)]
    pub strict: bool,
}

impl Cli {
    /// Merges the config file with the command line; the command line wins.
    pub fn config(&self) -> CliResult<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => {
                let sub = self.subcommand.ok_or_else(|| {
                    CliError::Usage("no subcommand given (and no --config)".into())
                })?;
                ExperimentConfig::new(sub)
            }
        };
        if let Some(sub) = self.subcommand {
            if self.config.is_some() && sub != cfg.subcommand {
                return Err(CliError::Usage(format!(
                    "subcommand {} conflicts with {} in the config file",
                    sub.name(),
                    cfg.subcommand.name()
                )));
            }
        }
        let mut extra = Params::default();
        for p in &self.params {
            extra.set_arg(p)?;
        }
        cfg.params.merge(&extra);
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if let Some(out) = &self.out {
            cfg.output = Some(out.clone());
        }
        Ok(cfg)
    }
}

fn emit(cfg: &ExperimentConfig, out: &RunOutput) -> CliResult<()> {
    match &cfg.output {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            for a in &out.artifacts {
                std::fs::write(dir.join(&a.name), &a.contents)?;
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            for a in &out.artifacts {
                stdout.write_all(a.contents.as_bytes())?;
            }
        }
    }
    Ok(())
}

/// Runs the command line and returns the process exit code.
pub fn main_with(args: impl IntoIterator<Item = std::ffi::OsString>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = cli.config().and_then(|cfg| {
        let out = run(&cfg, cli.strict)?;
        emit(&cfg, &out)?;
        if cfg.subcommand == Subcommand::Verify && cfg.output.is_some() {
            // the table is the point of verify; show it even when saved
            for a in &out.artifacts {
                print!("{}", a.contents);
            }
        }
        Ok(out.status)
    });
    match result {
        Ok(Status::Ok) => EXIT_OK,
        Ok(Status::CheckFailed(msg)) => {
            eprintln!("{}", CliError::Check(msg).to_json());
            EXIT_CHECK
        }
        Ok(Status::BudgetExceeded(msg)) => {
            eprintln!("{}", CliError::Budget(msg).to_json());
            EXIT_BUDGET
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
