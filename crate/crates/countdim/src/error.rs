use std::fmt;

use countdim_core::Error as CoreError;
use serde::Serialize;

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    /// A malformed value; `pos` is the byte offset inside it when known.
    Parse {
        param: String,
        pos: Option<usize>,
        msg: String,
    },
    /// A computation finished but its check failed.
    Check(String),
    Budget(String),
    Module(CoreError),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Io(_) => EXIT_USAGE,
            CliError::Check(_) => EXIT_CHECK,
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::Module(e) => match e {
                CoreError::BudgetExceeded { .. } => EXIT_BUDGET,
                CoreError::Parse { .. }
                | CoreError::Precondition(_)
                | CoreError::Domain(_)
                | CoreError::ArityMismatch { .. }
                | CoreError::InvalidArity(_)
                | CoreError::UnsupportedMap(_)
                | CoreError::ZeroPolynomial => EXIT_USAGE,
                _ => EXIT_CHECK,
            },
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Parse { .. } => "parse",
            CliError::Check(_) => "check_failed",
            CliError::Budget(_) => "budget_exceeded",
            CliError::Io(_) => "io",
            CliError::Module(CoreError::BudgetExceeded { .. }) => "budget_exceeded",
            CliError::Module(CoreError::Parse { .. }) => "parse",
            CliError::Module(_) => "module",
        }
    }

    /// Attaches the parameter name to a parse failure from the core.
    pub fn in_param(param: &str, e: CoreError) -> CliError {
        match e {
            CoreError::Parse { pos, msg } => CliError::Parse {
                param: param.to_string(),
                pos: Some(pos),
                msg,
            },
            other => CliError::Module(other),
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            error: &'a str,
            message: String,
            #[serde(skip_serializing_if = "Option::is_none")]
            param: Option<&'a str>,
            #[serde(skip_serializing_if = "Option::is_none")]
            pos: Option<usize>,
        }
        let (param, pos) = match self {
            CliError::Parse { param, pos, .. } => (Some(param.as_str()), *pos),
            CliError::Module(CoreError::Parse { pos, .. }) => (None, Some(*pos)),
            _ => (None, None),
        };
        serde_json::to_string(&Out {
            error: self.kind(),
            message: self.to_string(),
            param,
            pos,
        })
        .expect("plain struct serializes")
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Check(m) | CliError::Budget(m) | CliError::Io(m) => {
                f.write_str(m)
            }
            CliError::Parse { param, pos, msg } => match pos {
                Some(p) => write!(f, "cannot parse '{param}' at byte {p}: {msg}"),
                None => write!(f, "cannot parse '{param}': {msg}"),
            },
            CliError::Module(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Module(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
