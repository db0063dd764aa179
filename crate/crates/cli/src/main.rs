//! `baltrees`: exact tables, limit constants and self-checks for balanced
//! vertices in labeled trees.

mod commands;
mod output;

use std::process::ExitCode;

use baltrees_core::verify::CHECK_GROUPS;
use baltrees_core::{Error, Variety};
use clap::builder::PossibleValuesParser;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Failure;

/// Exit status for a run whose checks or gaps failed.
const EXIT_FAILED: u8 = 1;
/// Exit status for bad arguments, matching clap's own usage errors.
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "baltrees", version, about = "Balanced vertices in labeled trees, counted exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Counts of balanced vertices by size and rank.
    Table(TableArgs),
    /// Limiting fraction of balanced vertices per rank, exact and extrapolated.
    Limits(LimitsArgs),
    /// Run the self-checks and report each one.
    Verify(VerifyArgs),
    /// Fraction of balanced vertices by size, with a monotonicity verdict.
    Conjecture(ConjectureArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum VarietyArg {
    DecBinary,
    Nonplane12,
    Plane12,
}

impl From<VarietyArg> for Variety {
    fn from(v: VarietyArg) -> Self {
        match v {
            VarietyArg::DecBinary => Variety::DecBinary,
            VarietyArg::Nonplane12 => Variety::NonPlane12,
            VarietyArg::Plane12 => Variety::Plane12,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long, value_enum, default_value = "dec-binary")]
    variety: VarietyArg,
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
    #[arg(long, default_value_t = 3)]
    pub k_max: usize,
    /// Significant digits in the decimal column.
    #[arg(long, default_value_t = 12)]
    pub precision: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct LimitsArgs {
    /// Restrict to one variety; all three by default.
    #[arg(long, value_enum)]
    variety: Option<VarietyArg>,
    /// Highest rank for decreasing binary trees.
    #[arg(long, default_value_t = 5)]
    pub k_max: usize,
    /// Largest size feeding the extrapolation.
    #[arg(long, default_value_t = 400)]
    pub n_max: usize,
    /// Working precision in decimal digits, at least 30.
    #[arg(long, default_value_t = 50)]
    pub precision: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Restrict variety-specific checks; all three by default.
    #[arg(long, value_enum)]
    variety: Option<VarietyArg>,
    #[arg(long, default_value_t = 400)]
    pub n_max: usize,
    /// Largest size for exhaustive enumeration.
    #[arg(long)]
    pub oracle_limit: Option<usize>,
    /// Series order for closed-form comparisons.
    #[arg(long, default_value_t = 40)]
    pub order: usize,
    #[arg(long, default_value_t = 50)]
    pub precision: usize,
    /// Run a single group of checks.
    #[arg(long, value_parser = PossibleValuesParser::new(CHECK_GROUPS))]
    pub only: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: ReportFormat,
}

#[derive(Args, Debug)]
pub struct ConjectureArgs {
    /// One variety; both 1-2 varieties by default.
    #[arg(long, value_enum)]
    variety: Option<VarietyArg>,
    #[arg(long, default_value_t = 60)]
    pub n_max: usize,
    #[arg(long, default_value_t = 12)]
    pub precision: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

impl TableArgs {
    pub fn variety(&self) -> Variety {
        self.variety.into()
    }
}

impl LimitsArgs {
    pub fn varieties(&self) -> Vec<Variety> {
        self.variety.map_or_else(|| Variety::ALL.to_vec(), |v| vec![v.into()])
    }
}

impl VerifyArgs {
    pub fn variety(&self) -> Option<Variety> {
        self.variety.map(Into::into)
    }
}

impl ConjectureArgs {
    pub fn varieties(&self) -> Vec<Variety> {
        self.variety
            .map_or_else(|| vec![Variety::NonPlane12, Variety::Plane12], |v| vec![v.into()])
    }
}

/// What a command concluded, separate from errors that stop it early.
pub enum Outcome {
    Passed,
    Failed,
}

fn exit_code_for(failure: &Failure) -> u8 {
    match failure {
        Failure::Core(
            Error::InvalidArgument(_) | Error::OracleLimit { .. } | Error::UnknownConstant(_) | Error::TooFewPoints { .. },
        ) => EXIT_USAGE,
        _ => EXIT_FAILED,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Table(args) => commands::table(args),
        Command::Limits(args) => commands::limits(args),
        Command::Verify(args) => commands::verify(args),
        Command::Conjecture(args) => commands::conjecture(args),
    };
    match result {
        Ok(Outcome::Passed) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(EXIT_FAILED),
        Err(Failure::BrokenPipe) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
