use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use pcat::cli::{self, Command, Format, RunConfig};

#[derive(Clone, Copy, ValueEnum)]
enum Cmd {
    Validate,
    Globalize,
    Mediate,
    Topo,
    Oracle,
}

/// Partial category actions: validation, universal globalization,
/// mediation and topological checks over scenario files.
#[derive(Parser)]
#[command(name = "pcat", version)]
struct Args {
    command: Cmd,
    file: PathBuf,
    /// Target scenario with a `map` block (mediate).
    #[arg(long)]
    target: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    /// Largest carrier in the universality sweep (oracle).
    #[arg(long, default_value_t = cli::DEFAULT_MAX_SIZE)]
    max_size: usize,
    /// Seed for the randomized suite (oracle).
    #[arg(long, default_value_t = pcat::oracle::DEFAULT_SEED)]
    seed: u64,
    /// Number of random cases (oracle).
    #[arg(long, default_value_t = pcat::oracle::DEFAULT_CASES)]
    cases: usize,
    /// Print Y as a scenario file (globalize).
    #[arg(long)]
    scenario: bool,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                cli::EXIT_USAGE as u8
            } else {
                0
            });
        }
    };
    let command = match args.command {
        Cmd::Validate => Command::Validate,
        Cmd::Globalize => Command::Globalize,
        Cmd::Mediate => Command::Mediate,
        Cmd::Topo => Command::Topo,
        Cmd::Oracle => Command::Oracle,
    };
    let cfg = RunConfig {
        target: args.target,
        format: if args.json {
            Format::Json
        } else {
            Format::Text
        },
        max_size: args.max_size,
        seed: args.seed,
        cases: args.cases,
        scenario: args.scenario,
        ..RunConfig::new(command, args.file)
    };
    let outcome = cli::run(&cfg);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.code as u8)
}
