use std::io;
use std::path::PathBuf;

use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error(transparent)]
    Solver(#[from] ringdec_core::Error),

    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    pub fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Config {
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } => 2,
            CliError::Solver(_) => 3,
            CliError::Io { .. } => 4,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            CliError::Config { path, message } => json!({
                "error": "config",
                "field": path,
                "message": message,
                "exit_code": self.exit_code(),
            }),
            CliError::Solver(e) => json!({
                "error": "solver",
                "message": e.to_string(),
                "exit_code": self.exit_code(),
            }),
            CliError::Io { path, source } => json!({
                "error": "io",
                "path": path.display().to_string(),
                "message": source.to_string(),
                "exit_code": self.exit_code(),
            }),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
