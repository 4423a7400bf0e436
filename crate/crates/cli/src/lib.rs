//! Command-line front end: validated configuration, sweeps and CSV output.

pub mod config;
pub mod output;
pub mod run;

use lrk_core::LrkError;

pub use config::{Cli, Command, Resolved, RunConfig};

pub const VERSION: &str = concat!("lrk ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration:\n  - {}", .0.join("\n  - "))]
    Config(Vec<String>),
    #[error("numerical failure: {0}")]
    Numeric(#[from] LrkError),
    #[error("oracle mismatch: {0}")]
    Oracle(String),
    #[error("output: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Oracle(_) => 4,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
