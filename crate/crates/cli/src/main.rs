//! `tropkex`: generate key-exchange instances, attack them, verify the
//! recovered keys, and benchmark success rates.
//!
//! Exit codes: 0 success, 2 invalid flags or parameters, 3 unreadable or
//! malformed file, 4 attack failed, 5 verification mismatch, 6 corrupt
//! inputs (a secrets file that disagrees with its transcript), 1
//! unexpected internal error.

mod commands;
mod docs;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use docs::SemiringTag;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),

    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("malformed {path}: {source}")]
    Malformed {
        path: PathBuf,
        source: serde_json::Error,
    },

    #[error("invalid document: {0}")]
    Document(String),

    #[error("attack failed: no verified exponent pair was found")]
    AttackFailed,

    #[error("verification mismatch: {0}")]
    Mismatch(String),

    #[error("corrupt input: {0}")]
    Integrity(String),

    #[error(transparent)]
    Internal(tropkex::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Io { .. } | CliError::Malformed { .. } | CliError::Document(_) => 3,
            CliError::AttackFailed => 4,
            CliError::Mismatch(_) => 5,
            CliError::Integrity(_) => 6,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<tropkex::Error> for CliError {
    fn from(e: tropkex::Error) -> Self {
        match e {
            tropkex::Error::InvalidParams(msg) => CliError::Validation(msg),
            tropkex::Error::AttackFailed => CliError::AttackFailed,
            other => CliError::Internal(other),
        }
    }
}

#[derive(Parser)]
#[command(name = "tropkex", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a key-exchange instance: a public transcript file and a
    /// separate secrets file.
    Gen(GenArgs),
    /// Recover the shared key from a public transcript.
    Attack(AttackArgs),
    /// Check an attack document against the honest transcript + secrets.
    Verify(VerifyArgs),
    /// Run gen→attack campaigns over several sizes and summarize.
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Matrix size n (matrices are n×n).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
    n: u64,

    #[arg(long, default_value_t = tropkex::protocol::DEFAULT_ENTRY_MIN)]
    entry_min: i64,

    #[arg(long, default_value_t = tropkex::protocol::DEFAULT_ENTRY_MAX)]
    entry_max: i64,

    /// Probability in [0,1) that an entry coordinate is -inf (JSON null).
    #[arg(long, default_value_t = 0.0)]
    neginf_density: f64,

    /// Smallest secret exponent (exponents are natural numbers ≥ 1).
    #[arg(long, default_value_t = tropkex::protocol::DEFAULT_EXP_MIN, value_parser = clap::value_parser!(u64).range(1..))]
    exp_min: u64,

    #[arg(long, default_value_t = tropkex::protocol::DEFAULT_EXP_MAX)]
    exp_max: u64,

    #[arg(long, value_enum, default_value = "triad")]
    semiring: SemiringArg,

    /// Seed for the documented SplitMix64 generator; all randomness
    /// derives from it.
    #[arg(long)]
    seed: u64,

    /// Transcript output path (public data only).
    #[arg(long)]
    out: PathBuf,

    /// Secrets output path; defaults to `<out stem>.secrets.json`.
    #[arg(long)]
    secrets_out: Option<PathBuf>,
}

#[derive(Args)]
struct AttackArgs {
    /// Transcript file produced by `gen`.
    #[arg(long)]
    transcript: PathBuf,

    /// Attack document output path.
    #[arg(long)]
    out: PathBuf,

    /// Largest exponent the brute-force fallback scans when the CSR scan
    /// finds nothing.
    #[arg(long, default_value_t = 31)]
    fallback_bound: u64,

    /// Omit wall-time from the document so reruns are byte-identical.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    transcript: PathBuf,

    #[arg(long)]
    secrets: PathBuf,

    #[arg(long)]
    attack: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated matrix sizes, e.g. `3,4,5`.
    #[arg(long, value_delimiter = ',', required = true)]
    n_list: Vec<u64>,

    /// Gen→attack cycles per size.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,

    /// Base seed; trial i of every size runs on seed + i.
    #[arg(long)]
    seed: u64,

    #[arg(long, value_enum, default_value = "triad")]
    semiring: SemiringArg,

    #[arg(long, default_value_t = 31)]
    fallback_bound: u64,

    /// Summary output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Omit wall-time columns so reruns are byte-identical.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum SemiringArg {
    Tropical,
    Triad,
}

impl From<SemiringArg> for SemiringTag {
    fn from(arg: SemiringArg) -> Self {
        match arg {
            SemiringArg::Tropical => SemiringTag::Tropical,
            SemiringArg::Triad => SemiringTag::Triad,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => commands::gen(args),
        Command::Attack(args) => commands::attack(args),
        Command::Verify(args) => commands::verify(args),
        Command::Bench(args) => commands::bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
