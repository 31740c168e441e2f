mod commands;
mod input;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use input::Precision;
use output::Format;

#[derive(Parser)]
#[command(name = "solenoidal", version, about = "Fiber measures, atoms and MSF checks on generalized solenoids")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Global {
    /// Output format; csv applies to tabular reports only.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for parallel scans (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    #[arg(long, global = true, value_enum, default_value = "exact")]
    pub precision: Precision,
    /// Exit with status 2 when a verification fails.
    #[arg(long, global = true)]
    pub strict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Filter diagnostics.
    #[command(subcommand)]
    Filter(commands::FilterCmd),
    /// Fiber measures: cylinder masses and sampling.
    #[command(subcommand)]
    Fiber(commands::FiberCmd),
    /// Atoms of the fiber measures.
    #[command(subcommand)]
    Atoms(commands::AtomsCmd),
    /// Integrals against the solenoid measure.
    #[command(subcommand)]
    Tau(commands::TauCmd),
    /// Generalized MSF checks.
    #[command(subcommand)]
    Msf(commands::MsfCmd),
    /// Coordinates on the solenoid.
    #[command(subcommand)]
    Solenoid(commands::SolenoidCmd),
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    if cli.global.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.global.jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let g = &cli.global;
    let result = match cli.command {
        Command::Filter(c) => commands::filter(c, g),
        Command::Fiber(c) => commands::fiber(c, g),
        Command::Atoms(c) => commands::atoms(c, g),
        Command::Tau(c) => commands::tau(c, g),
        Command::Msf(c) => commands::msf(c, g),
        Command::Solenoid(c) => commands::solenoid(c, g),
    };
    let report = match result.and_then(|r| Ok((r.render(g.format)?, r.failed))) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}", diagnostic(&e));
            return ExitCode::from(1);
        }
    };
    let (text, failed) = report;
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(1);
    }
    if failed {
        eprintln!("verification failed");
        if g.strict {
            return ExitCode::from(2);
        }
    }
    ExitCode::SUCCESS
}

fn diagnostic(e: &anyhow::Error) -> String {
    match e.downcast_ref::<solenoidal::Error>() {
        Some(solenoidal::Error::TermCap { .. }) => {
            format!("term cap exceeded: {e}; raise it with SOLENOIDAL_TERM_CAP")
        }
        Some(solenoidal::Error::Json(j)) => format!("malformed JSON: {j}"),
        _ => format!("{e:#}"),
    }
}
