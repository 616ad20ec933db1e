mod args;
mod commands;
mod config;
mod descriptor;
mod error;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, Format};
use config::RunConfig;
use error::{CliError, CliResult};

fn emit(text: &str, output: Option<&Path>) -> CliResult<()> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write {
            path: path.display().to_string(),
            source,
        }),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|source| CliError::Write {
            path: "stdout".into(),
            source,
        }),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Analyze(a) => {
            // Eval-only keys from a config file are ignored.
            if a.run.format == Some(Format::Csv) {
                return Err(CliError::input("analyze reports are JSON only"));
            }
            let cfg = RunConfig::resolve(a)?;
            emit(&commands::run_analyze(&cfg)?, cfg.output.as_deref())
        }
        Command::Eval(a) => {
            let cfg = RunConfig::resolve(a)?;
            emit(&commands::run_eval(&cfg)?, cfg.output.as_deref())
        }
        Command::Selftest(a) => {
            let (text, report) = commands::run_selftest(&a)?;
            emit(&text, a.output.as_deref())?;
            match report.failures().len() {
                0 => Ok(()),
                n => Err(CliError::SelftestFailed(n)),
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tamezeta: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
