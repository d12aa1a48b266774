//! `explicit`: constant certification, bound evaluation, zero scanning and
//! the verification suites.
//!
//! Exit status: 0 pass, 1 certification or verification failure, 2 usage
//! error, 3 missing zero data.

mod commands;
mod output;
mod run_config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use explicit_core::Error;
use output::Format;

#[derive(Parser, Debug)]
#[command(name = "explicit", version, about = "Explicit zero-density and zero-repulsion numerics")]
pub struct Cli {
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Flat `key = value` file; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Lift the desk-scale guards (q ≤ 200, T ≤ 1000).
    #[arg(long = "unsafe", global = true)]
    unsafe_scale: bool,
    /// Zero cache directory (default: $EXPLICIT_ZERO_CACHE, then `zero_cache`).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Derived constants.
    #[command(subcommand)]
    Constants(ConstantsCmd),
    /// Evaluate a main bound.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Zero scanning and the zero cache.
    #[command(subcommand)]
    Zeros(ZerosCmd),
    /// Run verification suites.
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
enum ConstantsCmd {
    /// Certification report of every derived-versus-published constant.
    Derive {
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        eta: Option<f64>,
    },
    /// Minimise the single detector exponent over α.
    OptimizeAlpha,
}

#[derive(Subcommand, Debug)]
enum BoundsCmd {
    /// The zero-density bound.
    Density(DensityArgs),
    /// The zero-repulsion bound.
    Repulsion(RepulsionArgs),
}

#[derive(Args, Debug)]
pub struct FieldArgs {
    #[arg(long, default_value_t = 1)]
    nk: u32,
    #[arg(long, default_value_t = 1.0)]
    dk: f64,
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    /// Coefficient realising the `O(n_K)` terms.
    #[arg(long, default_value_t = 0.0)]
    implied: f64,
}

#[derive(Args, Debug)]
pub struct DensityArgs {
    #[arg(long)]
    sigma: f64,
    /// Largest conductor norm Q.
    #[arg(long)]
    q: f64,
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, default_value_t = 1.0)]
    leading: f64,
    /// Defaults to 74 for σ ≥ 1 − 10⁻³ and 81 otherwise.
    #[arg(long)]
    exponent: Option<f64>,
}

#[derive(Args, Debug)]
pub struct RepulsionArgs {
    #[arg(long, default_value = "quadratic")]
    kind: String,
    #[arg(long)]
    beta1: f64,
    #[arg(long)]
    nq: f64,
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
}

#[derive(Subcommand, Debug)]
enum ZerosCmd {
    /// Scan the primitive characters of one modulus or of `1..=qmax`.
    Scan {
        #[arg(long, conflicts_with = "qmax")]
        q: Option<u64>,
        #[arg(long)]
        qmax: Option<u64>,
        #[arg(long)]
        height: Option<f64>,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Comma-separated suites, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long)]
    qmax: Option<u64>,
    #[arg(long)]
    height: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    /// Scan moduli missing from the cache instead of failing.
    #[arg(long)]
    scan_missing: bool,
    /// Also write the JSON report to this file.
    #[arg(long)]
    report: Option<PathBuf>,
}

pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_MISSING: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Dependency(_) => EXIT_MISSING,
        Error::Domain(_) | Error::Parse(_) | Error::Pole(_) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
