//! Command-line surface: problem validation, coefficient export,
//! verification suites and averaged trajectories.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse or usage error,
//! 3 hypothesis violation, 4 resonance.

mod commands;
mod problem;
mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

pub use commands::{
    averaged_run, cmd_average, cmd_coeffs, cmd_validate, cmd_verify, coefficient_table, write_table, AverageArgs,
    AveragedRun, CoeffsArgs, VerifyArgs, ZERO_CUTOFF,
};
pub use problem::{Defaults, GKindTag, ModeEntry, Problem, ProblemFile, ProblemKind, TermEntry};
pub use suites::{Check, Suite, SuiteReport};

use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_RESONANCE: i32 = 4;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Resonance { .. } => EXIT_RESONANCE,
        Error::Hypothesis(_) | Error::NotInLieAlgebra(_) => EXIT_HYPOTHESIS,
        _ => EXIT_PARSE,
    }
}

/// `re` or `re:im`.
pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{s}`: {e}"));
    match s.split_once(':') {
        Some((re, im)) => Ok(Complex64::new(num(re)?, num(im)?)),
        None => Ok(Complex64::new(num(s)?, 0.0)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Alpha,
    Alphabar,
    Betabar,
    Kappa,
    GammaU,
    Rho,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "wordseries", version, about = "Word-series coefficients for averaging and normal forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a problem file and check its hypotheses and nonresonance.
    Validate { file: PathBuf },
    /// Export a coefficient table.
    Coeffs(CoeffsArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Averaged trajectory with a direct-solve reference.
    Average(AverageArgs),
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Reports go to stdout, errors to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = match &cli.command {
        Command::Validate { file } => cmd_validate(file, &mut out),
        Command::Coeffs(a) => cmd_coeffs(a, &mut out),
        Command::Verify(a) => cmd_verify(a, &mut out),
        Command::Average(a) => cmd_average(a, &mut out),
    };
    let _ = out.flush();
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
