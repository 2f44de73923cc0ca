//! Command-line experiments, report formats and the acceptance battery for
//! `countdim-core`.

pub mod cli;
pub mod config;
pub mod detmethod;
pub mod error;
pub mod oracle;
pub mod report;
pub mod run;
pub mod sample;
pub mod suite;
