//! `hyperappell` command-line front end.
//!
//! Exit status: 0 on success, 1 when a verification check fails, 2 on a
//! usage or configuration error.

mod args;
mod commands;

use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;

use args::{Cli, Command};
use commands::Output;

const THREADS_VAR: &str = "HYPERAPPELL_THREADS";

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .with_context(|| format!("{THREADS_VAR} must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    Ok(())
}

fn run(cli: &Cli) -> Result<Output> {
    configure_threads()?;
    let (output, destination) = match &cli.command {
        Command::Gen(a) => (commands::gen(a)?, &a.out.output),
        Command::Verify(a) => (commands::verify(a)?, &a.seq.out.output),
        Command::Eval(a) => (commands::eval(a)?, &a.seq.out.output),
        Command::Matrices(a) => (commands::matrices(a)?, &a.seq.out.output),
        Command::Exp(a) => (commands::exp(a)?, &a.out.output),
    };
    match destination {
        Some(path) => std::fs::write(path, &output.text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{}", output.text),
    }
    Ok(output)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) if out.passed => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
