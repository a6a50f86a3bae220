use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use macsic_cli::{run_to_dir, CliError, Command};

/// Asymptotic analysis, power optimization and simulation of iterative soft
/// interference cancellation.
#[derive(Debug, Parser)]
#[command(name = "macsic", version)]
struct Args {
    command: Command,
    /// JSON experiment description.
    #[arg(long)]
    config: PathBuf,
    /// Output directory for the CSV files.
    #[arg(long)]
    out: PathBuf,
    /// Overrides the seed in the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (defaults to all cores).
    #[arg(long)]
    threads: Option<usize>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&args) {
        Ok(paths) => {
            for p in paths {
                println!("wrote {}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("macsic: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(args: &Args) -> Result<Vec<PathBuf>, CliError> {
    if let Some(n) = args.threads {
        if n == 0 {
            return Err(CliError::config("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::config(format!("--threads: {e}")))?;
    }
    run_to_dir(args.command, &args.config, &args.out, args.seed)
}
