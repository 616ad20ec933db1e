//! Runs the twelve acceptance checks at the default precision and prints one line per check.

use std::process::ExitCode;

use tamezeta::selftest::{run_suite, SuiteOptions};

fn main() -> ExitCode {
    let report = match run_suite(&SuiteOptions::default()) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("acceptance suite could not run: {e}");
            return ExitCode::FAILURE;
        }
    };
    for check in &report.checks {
        println!("{check}");
    }
    let failed = report.failures().len();
    println!("acceptance: {} checks, {failed} failed", report.checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
