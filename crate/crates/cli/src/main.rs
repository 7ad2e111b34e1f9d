mod args;
mod commands;
mod failure;
mod format;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use failure::{Failure, Outcome};

/// Applies the optional `THREADS` override to the worker pool.
fn configure_threads() -> Outcome {
    let Ok(raw) = std::env::var("THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Failure::invalid(anyhow::anyhow!(
            "THREADS must be a positive integer, got `{raw}`"
        ))
    })?;
    spin_entropy::exec::init_thread_pool(threads);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| commands::run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
