mod cli;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crate::cli::Cli;

/// What a subcommand produced: the artifact and whether its check passed.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match commands::run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &outcome.text),
        None => std::io::stdout().lock().write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
