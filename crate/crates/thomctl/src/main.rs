use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thomctl::commands::{
    cmd_bounds, cmd_check, cmd_classical, cmd_expand, cmd_selfcheck, parse_bases, parse_basis, parse_ns, Report, Source,
};
use thomctl::{CliError, Result};

/// Legendrian Thom polynomials: expansion in the family of positivity
/// bases, positivity checks, coefficient bounds and classical Schur expansions.
///
/// Exit codes: 0 success, 1 a check or bound failed, 2 input error.
#[derive(Parser)]
#[command(name = "thomctl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand an expression or fixture records in one family basis.
    Expand {
        /// Expression such as "3*Q(2) + 1*t*Q(1)".
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["fixtures", "name"])]
        expr: Option<String>,
        /// Fixture file or directory of .tp files (default: the shipped tables).
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Record name, e.g. P_9.
        #[arg(long)]
        name: Option<String>,
        /// Basis "p,q", or "plane" for the two-parameter basis.
        #[arg(long, default_value = "1,1")]
        basis: String,
    },
    /// Check fixtures: homogeneity, Legendrian form, positivity, integrality, nonzero Lagrangian part.
    Check {
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Only this basis (default: plane, (1,1), (0,1), (1,0)).
        #[arg(long)]
        basis: Option<String>,
    },
    /// Interval of the unknown k keeping every expansion coefficient nonnegative.
    Bounds {
        /// Template affine in k, e.g. "3*a(2) + 3/2*s*a(1) - 1/2*k*s*a(1)".
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value = "0,1;1,0")]
        bases: String,
        /// Use the classical Schur expansions at these n instead ("2..6" or "2,3").
        #[arg(long)]
        n: Option<String>,
    },
    /// Schur expansion of T(T*M ⊗ ξ^(1/2))·c_n(T*M ⊗ ξ) in the classes s_L(T*M - ξ*).
    Classical {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        n: u32,
    },
    /// Run every invariant suite up to the given weight.
    Selfcheck {
        #[arg(long, default_value_t = 6)]
        max_weight: u32,
    },
}

fn run(cli: Cli) -> Result<Report> {
    match cli.command {
        Command::Expand { expr, fixtures, name, basis } => {
            let basis = parse_basis(&basis)?;
            let source = match &expr {
                Some(e) => Source::Expr(e),
                None if fixtures.is_none() && name.is_none() => {
                    return Err(CliError::Usage("give --expr, or --fixtures and/or --name".into()))
                }
                None => Source::Fixtures { path: fixtures.as_deref(), name: name.as_deref() },
            };
            cmd_expand(source, basis)
        }
        Command::Check { fixtures, basis } => {
            let bases = basis.map(|b| parse_basis(&b).map(|p| vec![p])).transpose()?;
            cmd_check(fixtures.as_deref(), bases)
        }
        Command::Bounds { expr, bases, n } => {
            let specs = parse_bases(&bases)?;
            let ns = n.map(|n| parse_ns(&n)).transpose()?;
            cmd_bounds(&expr, &specs, ns.as_deref())
        }
        Command::Classical { expr, n } => cmd_classical(&expr, n),
        Command::Selfcheck { max_weight } => cmd_selfcheck(max_weight),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(report) => {
            print!("{}", report.output);
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
