use thiserror::Error;

use crate::expr::ParseError;
use crate::fixtures::FixtureError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] thom_core::Error),
}

impl CliError {
    /// Every error surfaced by the CLI is an input problem (exit code 2);
    /// failed checks are reported through [`crate::commands::Report`].
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
