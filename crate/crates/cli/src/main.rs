mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use args::{Cli, Format};
use commands::{invocation, run, CliError, Output};

const EXIT_USAGE: u8 = 1;
const EXIT_NUMERIC: u8 = 2;

fn render(name: &str, params: serde_json::Value, format: Option<Format>, out: &Output) -> std::io::Result<Vec<u8>> {
    match (format, &out.text) {
        (None, Some(text)) => Ok(text.clone().into_bytes()),
        (Some(Format::Csv), _) => out.table.to_csv(),
        _ => output::to_json(&json!({
            "command": name,
            "params": params,
            "result": out.result,
            "warnings": out.warnings,
            "version": env!("CARGO_PKG_VERSION"),
        })),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let inv = invocation(&cli.command);
    let out = match run(&cli.command) {
        Ok(out) => out,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
        Err(CliError::Numeric(e)) => {
            eprintln!("error: {}: {e}", e.name());
            return ExitCode::from(EXIT_NUMERIC);
        }
    };
    let written = render(inv.name, inv.params, inv.output.format, &out)
        .and_then(|bytes| output::emit(&bytes, inv.output.out.as_deref()));
    if let Err(e) = written {
        eprintln!("error: Io: {e}");
        return ExitCode::from(EXIT_NUMERIC);
    }
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    if !out.failed.is_empty() {
        eprintln!("error: CheckFailed: mandatory checks failed: {}", out.failed.join(", "));
        return ExitCode::from(EXIT_NUMERIC);
    }
    ExitCode::SUCCESS
}
