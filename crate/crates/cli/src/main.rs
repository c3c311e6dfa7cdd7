//! `quadrisect`: solve, count, classify and render triangle quadrisections.
//!
//! Exit codes: 0 on success, 2 on invalid input, 3 when a verification
//! check fails. Diagnostics are a single line on stderr.

mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{parse_scale, Cli, Format, SCALE_VAR};
use commands::{run, CliError};

const EXIT_INPUT: u8 = 2;
const EXIT_VERIFY: u8 = 3;

fn diagnostic(msg: &str) -> ExitCode {
    let line = msg.lines().find(|l| !l.trim().is_empty()).unwrap_or(msg).trim();
    let line = line.strip_prefix("error: ").unwrap_or(line);
    eprintln!("quadrisect: {line}");
    ExitCode::from(EXIT_INPUT)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return diagnostic(&e.to_string()),
    };
    let scale = match parse_scale(std::env::var(SCALE_VAR).ok().as_deref()) {
        Ok(s) => s,
        Err(msg) => return diagnostic(&msg),
    };
    let tol = cli.config.tolerances(scale);

    let outcome = match run(&cli.command, &tol) {
        Ok(o) => o,
        Err(CliError::Input(msg)) => return diagnostic(&msg),
    };
    let rendered = match cli.config.format {
        Format::Json => outcome.document.to_json(),
        Format::Text => outcome.document.to_text(),
    };
    let written = match &cli.config.output {
        Some(path) => std::fs::write(path, &rendered).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .lock()
            .write_all(rendered.as_bytes())
            .map_err(|e| format!("stdout: {e}")),
    };
    if let Err(msg) = written {
        return diagnostic(&msg);
    }
    match outcome.failure {
        Some(msg) => {
            eprintln!("quadrisect: {msg}");
            ExitCode::from(EXIT_VERIFY)
        }
        None => ExitCode::SUCCESS,
    }
}
