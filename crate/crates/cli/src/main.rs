//! `bohr-lab` command-line tool.

mod args;
mod commands;
mod emit;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::CliError;

const THREADS_ENV: &str = "BOHR_LAB_THREADS";

fn threads_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if v.trim().is_empty() => Ok(None),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .map(Some)
            .ok_or_else(|| CliError::Invalid(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let threads = threads_from_env()?;
    let (body, code, output) = bohr_lab::par::with_threads(threads, || {
        let (result, output) = match &cli.command {
            Command::Radius(a) => (commands::radius(a), &a.out.output),
            Command::Coeffs(a) => (commands::coeffs(a), &a.out.output),
            Command::Scan(a) => (commands::scan(a), &a.out.output),
            Command::Verify(a) => (commands::verify(a), &a.out.output),
            Command::Selftest(a) => (commands::selftest(a), &a.out.output),
        };
        result.map(|(body, code)| (body, code, output.clone()))
    })?;
    emit::write_output(output.as_deref(), &body)?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("bohr-lab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
