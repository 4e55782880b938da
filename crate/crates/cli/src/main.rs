//! Batch command-line front end: generation and export, net verification,
//! exact discrepancy, and the lower-bound reproduction searches.
//!
//! Every subcommand emits a machine-readable report that embeds the resolved
//! configuration; verdict fields are decided on exact rationals rendered as
//! `"p/q"` strings, with decimal fields for display only.
//!
//! Exit codes: 0 all assertions pass, 1 assertion failure, 2 usage or input
//! error, 3 computation cap exceeded.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lowdisc::Error;

/// Default sweep cap, overridable through the environment.
pub fn default_cap() -> u64 {
    std::env::var("LOWDISC_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(lowdisc::levin_halton::DEFAULT_SWEEP_CAP)
}

#[derive(Parser)]
#[command(
    name = "lowdisc",
    version,
    about = "Exact-arithmetic toolkit for low-discrepancy point sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report to this path (atomic rename) instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Export a point set as CSV (exact rationals or digit expansions).
    Generate(GenerateArgs),
    /// Verify the net property, minimum valuation and admissibility level.
    CheckNet(CheckNetArgs),
    /// Exact star discrepancy of a point set.
    Discrepancy(DiscrepancyArgs),
    /// Anchored-box lower-bound checks on digital nets.
    LevinNet(LevinNetArgs),
    /// Averaged window discrepancy: closed form and brute-force oracle.
    Alpha(AlphaArgs),
    /// Exhaustive bad-window search over one period of window lengths.
    Theorem2(Theorem2Args),
    /// Square pigeonhole search for a window length bad on many boxes.
    Theorem5(Theorem5Args),
    /// Run the complete reproduction suite.
    ReproduceAll,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Construction {
    Hammersley,
    Halton,
    Copies,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Rationals,
    Digits,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    construction: Construction,
    /// Net order for hammersley/copies.
    #[arg(long, default_value_t = 4)]
    m: u32,
    /// Base for hammersley/copies.
    #[arg(long, default_value_t = 2)]
    base: u32,
    /// Halton bases, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    bases: Vec<u32>,
    /// Number of Halton points.
    #[arg(long, default_value_t = 16)]
    count: u64,
    /// Digits per coordinate for Halton points (default: enough for count).
    #[arg(long)]
    precision: Option<usize>,
    #[arg(long, value_enum, default_value_t = ExportFormat::Rationals)]
    format: ExportFormat,
}

#[derive(Args)]
struct CheckNetArgs {
    /// Built-in construction to check.
    #[arg(long, value_enum, conflicts_with = "input")]
    construction: Option<Construction>,
    /// Digit-expansion CSV to check instead of a construction.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    m: u32,
    #[arg(long, default_value_t = 2)]
    base: u32,
    /// Quality parameter to verify.
    #[arg(long, default_value_t = 0)]
    t: u32,
    /// Apply a seeded random digital shift before checking.
    #[arg(long)]
    shift_seed: Option<u64>,
}

#[derive(Args)]
struct DiscrepancyArgs {
    /// Point-set CSV (rationals or digit expansions).
    #[arg(long, conflicts_with = "construction")]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    construction: Option<Construction>,
    #[arg(long, default_value_t = 4)]
    m: u32,
    #[arg(long, default_value_t = 2)]
    base: u32,
    /// Also run the brute-force oracle and assert exact equality.
    #[arg(long)]
    oracle: bool,
    /// Point cap for the oracle route.
    #[arg(long, default_value_t = 256)]
    oracle_cap: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LevinMode {
    Theorem3,
    Theorem4,
    Lemma31,
}

#[derive(Args)]
struct LevinNetArgs {
    #[arg(long, value_enum)]
    mode: LevinMode,
    #[arg(long, default_value_t = 8)]
    m: u32,
    #[arg(long, default_value_t = 2)]
    s: usize,
    #[arg(long, default_value_t = 2)]
    b: u32,
    /// Random points to test in theorem4 mode.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Constraint constants for lemma31 mode (rationals as p/q).
    #[arg(long, default_value_t = 2)]
    alpha: u32,
    #[arg(long, default_value = "16/1")]
    beta: String,
    /// Omit for the limit mode.
    #[arg(long)]
    delta: Option<String>,
}

#[derive(Args)]
struct AlphaArgs {
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    bases: Vec<u32>,
    #[arg(long, default_value_t = 3)]
    m: u32,
    /// Also run the brute-force oracle and assert exact equality.
    #[arg(long)]
    oracle: bool,
    /// Addend indices to remove from the first coordinate.
    #[arg(long, value_delimiter = ',')]
    remove_first: Vec<u32>,
    /// Addend indices to remove from the second coordinate.
    #[arg(long, value_delimiter = ',')]
    remove_second: Vec<u32>,
    #[arg(long, default_value_t = default_cap())]
    cap: u64,
}

#[derive(Args)]
struct Theorem2Args {
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    bases: Vec<u32>,
    #[arg(long, default_value_t = 3)]
    m: u32,
    #[arg(long, default_value_t = default_cap())]
    cap: u64,
    /// Write the full (N, Delta) trajectory as CSV here.
    #[arg(long)]
    trajectory: Option<PathBuf>,
}

#[derive(Args)]
struct Theorem5Args {
    #[arg(long, default_value_t = 5)]
    m: u32,
    #[arg(long, default_value_t = 8)]
    squares: u32,
    /// Quadratic growth constant as p/q (default: calibrated value).
    #[arg(long)]
    c2: Option<String>,
    #[arg(long, default_value_t = default_cap())]
    cap: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.output.as_deref();
    let outcome = match cli.command {
        Command::Generate(args) => commands::generate(&args, output),
        Command::CheckNet(args) => commands::check_net(&args, output),
        Command::Discrepancy(args) => commands::discrepancy(&args, output),
        Command::LevinNet(args) => commands::levin_net(&args, output),
        Command::Alpha(args) => commands::alpha(&args, output),
        Command::Theorem2(args) => commands::theorem2(&args, output),
        Command::Theorem5(args) => commands::theorem5(&args, output),
        Command::ReproduceAll => commands::reproduce_all(output),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                CliError::Core(Error::CapExceeded { .. }) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

/// Errors surfaced to the user; I/O failures are passed through verbatim.
#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult = Result<bool, CliError>;
