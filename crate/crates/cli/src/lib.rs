//! Front end for `pwhit-core`: configuration merging, result records, and
//! the `eval | asympt | verify | sweep | xval` commands.
//!
//! Exit status: 0 success, 2 configuration error, 3 numerical-domain error,
//! 4 verification failure.

pub mod commands;
pub mod config;
pub mod record;

use std::path::Path;

use thiserror::Error;

pub use commands::{run, Outcome};
pub use config::{Cli, Command, Method, OutputFormat, RunConfig};
pub use record::{ResultRecord, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] pwhit_core::Error),
    #[error("output error: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_numerical_domain() => EXIT_NUMERICAL,
            _ => EXIT_CONFIG,
        }
    }
}

/// Exit code for a core error carried inside a record.
pub fn core_exit_code(e: &pwhit_core::Error) -> i32 {
    if e.is_numerical_domain() {
        EXIT_NUMERICAL
    } else {
        EXIT_CONFIG
    }
}

/// Write `text` to `path`, or to stdout when `path` is `None`.
pub fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    use std::io::Write;
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Output(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Output(e.to_string()))
        }
    }
}
