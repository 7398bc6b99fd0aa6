mod args;
mod cache;
mod commands;
mod error;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, Common};
use error::CliResult;

fn configure_threads(common: &Common) -> CliResult<()> {
    #[cfg(feature = "parallel")]
    if let Some(n) = common.threads {
        if n == 0 {
            return Err(error::CliError::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| error::CliError::Usage(e.to_string()))?;
    }
    #[cfg(not(feature = "parallel"))]
    let _ = common;
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Factor { inst, common } => commands::cmd_factor(&inst, &common),
        Command::Verify { inst, oracle, cache, common } => {
            configure_threads(&common)?;
            commands::cmd_verify(&inst, oracle, cache, &common)
        }
        Command::Periods { p, s, e, common } => {
            configure_threads(&common)?;
            commands::cmd_periods(p, s, e, &common)
        }
        Command::Partition { p, s, r, kind, common } => commands::cmd_partition(p, s, r, kind, &common),
        Command::Lemmas { inst, only, common } => {
            configure_threads(&common)?;
            commands::cmd_lemmas(&inst, only.as_deref(), &common)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
