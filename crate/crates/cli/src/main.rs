//! `cylbuckle`: critical strain sweeps, Korn scans and buckling-mode fields
//! for axially compressed cylindrical shells.
//!
//! Exit codes: 0 success, 1 invalid input, 2 numerical or I/O failure.

mod commands;
mod config;
mod error;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Overrides, RunConfig};
use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "cylbuckle", version, about = "Buckling of axially compressed cylindrical shells")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Critical strain and winning mode for each h (JSON)
    CriticalLoad,
    /// Integer sweep table for each h (sweep.csv)
    Sweep,
    /// Integer pairs near the Koiter circle (koiter.csv)
    Koiter,
    /// Korn-type constants from the spectral oracle (korn.csv, korn.json)
    Korn,
    /// Korn-type ratios of the localized ansatz (ansatz.csv)
    Ansatz,
    /// Gaps between the three buckling quotients (equivalence.csv)
    Equivalence,
    /// Two-harmonic buckling mode field and its quotient ratio
    Mode,
    /// Run the acceptance suite
    Verify,
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(&cli.overrides)?;
    if let Some(jobs) = cli.overrides.jobs {
        if jobs == 0 {
            return Err(CliError::Validation("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Validation(format!("thread pool: {e}")))?;
    }
    match cli.command {
        Command::CriticalLoad => commands::critical_load(&cfg),
        Command::Sweep => commands::sweep_cmd(&cfg),
        Command::Koiter => commands::koiter(&cfg),
        Command::Korn => commands::korn(&cfg),
        Command::Ansatz => commands::ansatz(&cfg),
        Command::Equivalence => commands::equivalence(&cfg),
        Command::Mode => commands::mode(&cfg),
        Command::Verify => commands::verify(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
