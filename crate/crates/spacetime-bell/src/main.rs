use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use spacetime_bell::cli::{
    cmd_exact, cmd_feasibility, cmd_lhv_bound, cmd_lhv_fit, cmd_sample, cmd_schedule, CliError,
    CmdOutput, OutputFormat, RunConfig,
};

#[derive(Parser)]
#[command(
    name = "stbell",
    version,
    about = "Bell experiment against spacetime geometry: exact tables, seeded Monte Carlo, causal scheduling, classical bounds"
)]
struct Args {
    /// Configuration file (TOML); built-in defaults are used when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// RNG seed; overrides the config file.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Output directory; overrides the config file.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Distribution table format; overrides the config file.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact joint distribution, CHSH report and no-signalling audit.
    Exact,
    /// Seeded Monte Carlo trials with an estimated CHSH report.
    Sample,
    /// Event schedule and spacelike-separation verdicts for the budget.
    Schedule,
    /// Newtonian feasibility inequalities for the geometry readout.
    Feasibility,
    /// Exhaustive classical CHSH ceiling over deterministic strategies.
    LhvBound,
    /// Closest classical mixture to the exact quantum table.
    LhvFit,
}

fn run(args: Args) -> Result<CmdOutput, CliError> {
    let mut config = match &args.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = args.seed {
        config.seed = Some(seed);
    }
    if let Some(out) = args.out {
        config.output.dir = out;
    }
    if let Some(format) = args.format {
        config.output.format = format;
    }
    match args.command {
        Command::Exact => cmd_exact(&config),
        Command::Sample => cmd_sample(&config),
        Command::Schedule => cmd_schedule(&config),
        Command::Feasibility => cmd_feasibility(&config),
        Command::LhvBound => cmd_lhv_bound(&config),
        Command::LhvFit => cmd_lhv_fit(&config),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(output) => {
            println!("{}", output.summary);
            for file in output.files {
                println!("wrote {}", file.display());
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
