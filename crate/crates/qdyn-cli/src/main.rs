//! Command-line front end for the qdyn simulator.
//!
//! Four subcommands cover the analysis surface: `simulate` writes time and
//! stroboscopic traces of one configuration, `sweep` maps infidelity over a
//! two-parameter grid, `fourier` analyzes the periodicity of the population
//! signal (single point or grid), and `magic` locates the interaction phase
//! that minimizes long-run infidelity inside a bracket.
//!
//! Exit codes: 0 success, 2 configuration or filesystem problem, 3 numerical
//! failure, 4 degenerate spectral reference, 5 failed search.

// Validation deliberately writes `!(x > bound)` so NaN inputs fail closed.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod output;
mod run;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use run::CliError;

/// Subcommand entry point: configuration path, output directory, force flag.
type Driver = fn(&Path, &Path, bool) -> Result<(), CliError>;

#[derive(Parser)]
#[command(
    name = "qdyn",
    version,
    about = "Driven-qubit error-compensation simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one configuration and write time-series and fidelity tables.
    Simulate(RunArgs),
    /// Map infidelity after n periods over a two-parameter grid.
    Sweep(RunArgs),
    /// Analyze the periodicity of the population signal.
    Fourier(RunArgs),
    /// Locate the compensating interaction phase inside a bracket.
    Magic(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Path to the run configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Output directory; created if absent.
    #[arg(long)]
    out: PathBuf,
    /// Worker-thread cap for parallel grids; 1 produces byte-identical
    /// output to the default (all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Overwrite existing output files.
    #[arg(long)]
    force: bool,
    /// Random seed, accepted for interface stability; every command is
    /// deterministic and ignores it.
    #[arg(long)]
    seed: Option<u64>,
}

fn dispatch(cmd: &Command) -> Result<(), CliError> {
    let (args, driver): (&RunArgs, Driver) = match cmd {
        Command::Simulate(a) => (a, run::simulate),
        Command::Sweep(a) => (a, run::sweep),
        Command::Fourier(a) => (a, run::fourier),
        Command::Magic(a) => (a, run::magic),
    };
    let _ = args.seed;
    match args.jobs {
        None => driver(&args.config, &args.out, args.force),
        Some(0) => Err(CliError::config("--jobs must be at least 1")),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::config(format!("cannot build worker pool: {e}")))?;
            pool.install(|| driver(&args.config, &args.out, args.force))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
