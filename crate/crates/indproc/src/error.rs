use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
pub const EXIT_PASS: u8 = 0;
pub const EXIT_TOLERANCE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid config field `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("malformed JSON in {}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("CSV output: {0}")]
    Csv(#[from] csv::Error),

    #[error("simulation failed: {0}")]
    Simulation(#[from] indproc_core::Error),
}

impl CliError {
    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Config {
            field: field.into(),
            message: message.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// Everything that stops a run before a verdict is a usage error.
    pub fn exit_code(&self) -> u8 {
        EXIT_USAGE
    }
}

/// Maps a core parameter error into a config error under `parameters.`.
pub(crate) fn param_error(e: indproc_core::Error) -> CliError {
    match e {
        indproc_core::Error::Parameter { name, reason } => {
            CliError::config(format!("parameters.{name}"), reason)
        }
        other => CliError::config("parameters", other.to_string()),
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
