//! Command-line front end for rational difference systems: classification,
//! projective reduction, orbit simulation, case-study analysis, and parameter
//! sweeps.

mod commands;
mod orbitcsv;
mod specfile;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{AnalyzeCommand, ClassifyArgs, ReduceArgs, SimulateArgs, SweepArgs};

#[derive(Parser)]
#[command(
    name = "ratsys",
    version,
    about = "Classify, reduce, simulate, and analyze first-order rational difference systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a system into its projective pattern (exit 2 when none holds).
    Classify(ClassifyArgs),
    /// Print the reduced (k-1)-dimensional system of a projective spec.
    Reduce(ReduceArgs),
    /// Iterate a system, write the orbit CSV, and report the detected limit.
    Simulate(SimulateArgs),
    /// Closed-form analysis of the bundled case studies (exit 3 on the
    /// degenerate ex3 boundary).
    #[command(subcommand)]
    Analyze(AnalyzeCommand),
    /// Classify every cell of an ex3 parameter grid into a CSV report.
    Sweep(SweepArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Classify(args) => commands::classify(args),
        Command::Reduce(args) => commands::reduce(args),
        Command::Simulate(args) => commands::simulate(args),
        Command::Analyze(command) => commands::analyze(command),
        Command::Sweep(args) => commands::sweep(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
