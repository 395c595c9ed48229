//! Thin command-line front end. The library's examples/ directory is the
//! richer tour; this binary exposes the three report commands with exit
//! codes suitable for CI: 0 = pass, 1 = computational mismatch, 2 = input
//! error.

use clap::{Args, Parser, Subcommand};
use motzeta::cli::{self, CommandOutcome, FanSource, RunConfig};
use motzeta::error::Error;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "motzeta", version, about = "Motivic height zeta functions of toric varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Builtin fan name: p1, p2, p3, p1xp1, hirzebruch:m
    #[arg(long, conflicts_with = "fan")]
    builtin: Option<String>,
    /// Path to a fan JSON file {"rank":r,"rays":[[..]],"max_cones":[[..]]}
    #[arg(long)]
    fan: Option<PathBuf>,
    /// Output format: text, json, csv
    #[arg(long, default_value = "text")]
    format: String,
    /// Write the report to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

impl CommonArgs {
    fn source(&self) -> Result<FanSource, Error> {
        match (&self.builtin, &self.fan) {
            (Some(name), None) => Ok(FanSource::Builtin(name.clone())),
            (None, Some(path)) => Ok(FanSource::Path(path.clone())),
            _ => Err(Error::InvalidInput(
                "exactly one of --builtin or --fan is required".into(),
            )),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate a fan and print its derived combinatorics
    Fan {
        #[command(flatten)]
        common: CommonArgs,
        /// Allow the approximate alpha* estimate for Picard rank > 2
        #[arg(long)]
        approx: bool,
    },
    /// Per-degree table of height zeta classes
    Heights {
        #[command(flatten)]
        common: CommonArgs,
        /// Largest anticanonical degree
        #[arg(long, default_value_t = 8)]
        dmax: usize,
        /// Truncation order for the rationality check (defaults to what the
        /// check needs)
        #[arg(long)]
        trunc: Option<usize>,
        /// Primes for the finite-field oracle, e.g. --oracle 2,3
        #[arg(long, value_delimiter = ',')]
        oracle: Vec<u64>,
        /// Run the Hirzebruch rationality check (builtin hirzebruch:m only)
        #[arg(long)]
        check_hirzebruch: bool,
    },
    /// Motivic Tamagawa constant by two independent paths
    Tamagawa {
        #[command(flatten)]
        common: CommonArgs,
        /// Numeric value of L (must exceed 1)
        #[arg(long = "L", default_value_t = 4.0)]
        l: f64,
        /// Truncation order for both paths
        #[arg(long, default_value_t = 16)]
        trunc: usize,
        /// Allow the approximate alpha* estimate for Picard rank > 2
        #[arg(long)]
        approx: bool,
    },
}

fn build_config(
    common: &CommonArgs,
    dmax: usize,
    trunc: usize,
    oracle: Vec<u64>,
    l: f64,
    check_hirzebruch: bool,
    approx: bool,
) -> Result<RunConfig, Error> {
    Ok(RunConfig {
        source: common.source()?,
        dmax,
        trunc,
        oracle_primes: oracle,
        l_value: l,
        check_hirzebruch,
        approx,
        format: common.format.parse()?,
        out: common.out.clone(),
    })
}

fn run() -> Result<(RunConfig, CommandOutcome), Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Fan { common, approx } => {
            let cfg = build_config(&common, 0, 0, vec![], 4.0, false, approx)?;
            let outcome = cli::cmd_fan(&cfg)?;
            Ok((cfg, outcome))
        }
        Command::Heights {
            common,
            dmax,
            trunc,
            oracle,
            check_hirzebruch,
        } => {
            let trunc = trunc.unwrap_or(dmax);
            let cfg = build_config(&common, dmax, trunc, oracle, 4.0, check_hirzebruch, false)?;
            let outcome = cli::cmd_heights(&cfg)?;
            Ok((cfg, outcome))
        }
        Command::Tamagawa {
            common,
            l,
            trunc,
            approx,
        } => {
            let cfg = build_config(&common, 0, trunc, vec![], l, false, approx)?;
            let outcome = cli::cmd_tamagawa(&cfg)?;
            Ok((cfg, outcome))
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok((cfg, outcome)) => {
            if let Err(e) = cli::emit(&cfg, &outcome) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if outcome.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let code = match &e {
                Error::PathDisagreement { .. }
                | Error::IntegralityFailure { .. }
                | Error::IdentityFailure(_)
                | Error::NonVanishingTail { .. } => 1,
                _ => 2,
            };
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}
