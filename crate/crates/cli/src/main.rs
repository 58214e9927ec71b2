//! `quivinv`: list trace-word generators, verify invariant-theory claims on
//! small instances, and report local models of moduli spaces.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use quivinv_core::oracle::DEFAULT_GUARD_RAIL;
use quivinv_core::Error;

/// Environment variable capping the worker thread count.
const THREADS_ENV: &str = "QUIVINV_THREADS";

#[derive(Parser, Debug)]
#[command(name = "quivinv", version, about = "Trace-word invariants of symmetric quiver representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List canonical trace words with an invariance spot check.
    Gens(GensArgs),
    /// Check spanning, multilinear and invariance claims; without input, run
    /// the bundled suite.
    Verify(VerifyArgs),
    /// Local-model report for one or more decomposition specs.
    Local(LocalArgs),
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Emit JSON instead of a table.
    #[arg(long)]
    json: bool,
    /// Seed for every random choice.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug, Clone)]
struct GensArgs {
    /// Quiver JSON file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 4)]
    max_word_len: usize,
    /// Random (representation, group element) pairs per spot check.
    #[arg(long, default_value_t = 20)]
    samples: usize,
    /// Evaluate stars as plain transposes.
    #[arg(long)]
    negative_control: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct VerifyArgs {
    /// Quiver JSON file with dimensions.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Multilinear case `N,N',i`; may be repeated.
    #[arg(long, value_parser = parse_triple)]
    fft: Vec<(usize, usize, usize)>,
    #[arg(long, default_value_t = 4)]
    max_degree: usize,
    #[arg(long, default_value_t = 4)]
    max_word_len: usize,
    #[arg(long, default_value_t = 120)]
    samples: usize,
    /// Largest monomial space the oracle may build.
    #[arg(long, default_value_t = DEFAULT_GUARD_RAIL, value_parser = parse_positive)]
    guard_rail: usize,
    /// Evaluate stars as plain transposes.
    #[arg(long)]
    negative_control: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct LocalArgs {
    /// Decomposition spec JSON file; may be repeated.
    #[arg(long, required = true)]
    input: Vec<PathBuf>,
    #[command(flatten)]
    common: Common,
}

fn parse_triple(s: &str) -> Result<(usize, usize, usize), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b, c] => {
            let p = |x: &str| x.parse::<usize>().map_err(|e| format!("`{x}`: {e}"));
            Ok((p(a)?, p(b)?, p(c)?))
        }
        _ => Err(format!("expected N,N',i, got `{s}`")),
    }
}

fn parse_positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass = 0,
    Failure = 1,
    InputError = 2,
    GuardRail = 3,
    Unsupported = 4,
}

impl Outcome {
    pub fn from_error(e: &Error) -> Self {
        match e {
            Error::TooLarge { .. } => Outcome::GuardRail,
            Error::UnsupportedConfiguration(_) => Outcome::Unsupported,
            _ => Outcome::InputError,
        }
    }
}

fn configure_threads() -> Result<(), String> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got `{v}`"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(Outcome::InputError as u8);
    }
    let outcome = match cli.command {
        Command::Gens(a) => commands::gens(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Local(a) => commands::local(&a),
    };
    ExitCode::from(outcome as u8)
}
