//! `trajeval`: scores trajectory forecasts against ground truth without
//! identity correspondence, and synthesizes the inputs for doing so.
//!
//! Exit codes are a stable contract: 0 success, 1 input error (bad flags,
//! unreadable or malformed files, failed validation), 2 internal error.

mod degrade;
mod evaluate;
mod forecast;
mod generate;
mod jobs;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "trajeval",
    version,
    about = "Evaluate trajectory forecasts against ground truth without identity correspondence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score predictions against ground truth (EFE, OSPA-2, IDF1)
    Evaluate(evaluate::EvaluateArgs),
    /// Generate reference forecasts from observed tracks
    Forecast(forecast::ForecastArgs),
    /// Synthesize degraded tracking output from clean tracks
    Degrade(degrade::DegradeArgs),
    /// Generate synthetic ground-truth scenes
    Gen(generate::GenArgs),
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Evaluate(args) => evaluate::run(args),
        Command::Forecast(args) => forecast::run(args),
        Command::Degrade(args) => degrade::run(args),
        Command::Gen(args) => generate::run(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help and --version land here too; only usage mistakes are
            // input errors.
            let code = u8::from(err.use_stderr());
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match panic::catch_unwind(AssertUnwindSafe(|| run(cli))) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(err)) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
        Err(_) => {
            // The default panic hook has already printed the panic message.
            eprintln!("trajeval: internal error; this is a bug");
            ExitCode::from(2)
        }
    }
}
