//! Command-line front end: configuration, scenario tables and output files.

pub mod config;
pub mod output;
pub mod scenarios;

use std::path::Path;

use thiserror::Error;

use config::{Overrides, Scenario};
use output::Written;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<ergochain_core::Error> for CliError {
    fn from(e: ergochain_core::Error) -> Self {
        use ergochain_core::Error as E;
        match e {
            E::InvalidConfig(_) | E::InvalidInput(_) | E::NotApplicable(_) => CliError::Config(e.to_string()),
            E::NoConvergence { .. } | E::Undefined(_) => CliError::Numerical(e.to_string()),
        }
    }
}

/// Loads the configuration, evaluates the scenario and writes its files.
pub fn run(scenario: Scenario, config_path: &Path, overrides: &Overrides) -> Result<Written, CliError> {
    let cfg = config::load(config_path, scenario, overrides)?;
    let table = scenarios::run(&cfg)?;
    output::write_outputs(&cfg, &table)
}
