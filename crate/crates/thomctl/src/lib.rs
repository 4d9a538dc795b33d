//! Command-line front end for Legendrian Thom polynomial computations.

pub mod commands;
pub mod error;
pub mod expr;
pub mod fixtures;
pub mod selfcheck;

pub use error::{CliError, Result};
