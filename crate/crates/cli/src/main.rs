//! `corona`: build corona products of subdivision graphs and report their
//! resistance distances and Kirchhoff indices.
//!
//! Exit codes: 0 success, 1 verification failure or mismatch, 2 usage or
//! parse error, 3 precondition violation (disconnected G1, irregular G2, ...).

mod args;
mod run;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    match run::run(&cli.command) {
        Ok(run::Outcome::Success) => ExitCode::SUCCESS,
        Ok(run::Outcome::Mismatch(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
