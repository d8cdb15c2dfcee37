mod commands;
mod config;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use config::Cli;

/// Failure classes, each with its own exit status.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config or input content (exit 1).
    Validation(String),
    /// Command-line parse error, already reported by clap (exit 1).
    Usage,
    /// The identity suite found violations (exit 2).
    Identity { output: String, report: String },
    /// Reading or writing a file failed (exit 3).
    Io(String),
}

impl From<czonal::Error> for CliError {
    fn from(e: czonal::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

fn emit(path: Option<&std::path::Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
        }
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

fn run() -> Result<(), CliError> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return Ok(());
        }
        Err(e) => {
            let _ = e.print();
            return Err(CliError::Usage);
        }
    };
    let job = cli.into_job()?;
    match commands::run(&job) {
        Ok(text) => emit(job.out.as_deref(), &text),
        Err(CliError::Identity { output, report }) => {
            emit(job.out.as_deref(), &output)?;
            Err(CliError::Identity { output, report })
        }
        Err(e) => Err(e),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {}", msg.trim_end());
            ExitCode::from(1)
        }
        Err(CliError::Usage) => ExitCode::from(1),
        Err(CliError::Identity { report, .. }) => {
            eprintln!("{report}");
            ExitCode::from(2)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("I/O error: {msg}");
            ExitCode::from(3)
        }
    }
}
