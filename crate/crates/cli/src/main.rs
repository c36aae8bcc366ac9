mod args;
mod cmd;
mod error;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::error::CliError;

/// Identify and classify direct and logarithmic tracts of entire functions.
#[derive(Parser, Debug)]
#[command(name = "tractscope", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full pipeline on one expression; JSON report.
    Analyze(args::AnalyzeArgs),
    /// Binary PPM picture of the tracts.
    Render(args::RenderArgs),
    /// Poisson tract models.
    Model(args::ModelArgs),
    /// Numerical checks for g(z) = Σ (z/2^k)^(2^k).
    BeVerify(args::BeArgs),
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("TRACTSCOPE_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::Usage(format!(
            "TRACTSCOPE_THREADS must be a positive integer, got `{v}`"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Analyze(a) => cmd::analyze(&a),
        Command::Render(a) => cmd::render(&a),
        Command::Model(a) => cmd::model(&a),
        Command::BeVerify(a) => cmd::be_verify(&a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}
