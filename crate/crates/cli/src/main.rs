//! `quadlat`: command-line access to the quadlat library.
//!
//! Exit codes: 0 success, 1 usage error, 2 invariant violation or failed
//! check, 3 ordering-search cap exceeded.

mod args;
mod commands;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use serde_json::Value;

use args::{Cli, Command, OutputFormat};

/// One result rendered three ways; `csv` is `None` where no tabular form
/// exists.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub csv: Option<String>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(quadlat::Error),
    /// The command ran but its check failed; the output is still printed.
    Failed(Output, String),
    Internal(String),
}

impl std::fmt::Debug for Output {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.text)
    }
}

impl From<quadlat::Error> for CliError {
    fn from(e: quadlat::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(quadlat::Error::InvalidArgument(_)) => 1,
            CliError::Core(quadlat::Error::CapExceeded { .. }) => 3,
            _ => 2,
        }
    }
}

fn render(out: &Output, format: OutputFormat) -> Result<String, CliError> {
    match format {
        OutputFormat::Text => Ok(out.text.clone()),
        OutputFormat::Json => serde_json::to_string_pretty(&out.json)
            .map(|s| s + "\n")
            .map_err(|e| CliError::Internal(e.to_string())),
        OutputFormat::Csv => out
            .csv
            .clone()
            .ok_or_else(|| CliError::Usage("this command has no csv output; use text or json".into())),
    }
}

fn output_path(command: &Command) -> Option<&Path> {
    match command {
        Command::Table { out, .. }
        | Command::CompleteQn { out, .. }
        | Command::Dual { out, .. }
        | Command::Product { out, .. } => out.output.as_deref(),
        Command::Scan { sweep, .. } | Command::Classify { sweep, .. } => sweep.out.output.as_deref(),
        _ => None,
    }
}

fn emit(out: &Output, format: OutputFormat, path: Option<&Path>) -> Result<(), CliError> {
    let text = render(out, format)?;
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| {
            CliError::Core(quadlat::Error::Io {
                path: p.to_path_buf(),
                source: e,
            })
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Internal(e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let format = cli.format;
    let path = output_path(&cli.command).map(Path::to_path_buf);
    let result = commands::run(cli.command, format).and_then(|out| emit(&out, format, path.as_deref()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed(out, msg)) => {
            let _ = emit(&out, format, path.as_deref());
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            let code = e.exit_code();
            match e {
                CliError::Usage(msg) | CliError::Internal(msg) => eprintln!("error: {msg}"),
                CliError::Core(err) => eprintln!("error: {err}"),
                CliError::Failed(..) => unreachable!("handled above"),
            }
            ExitCode::from(code)
        }
    }
}
