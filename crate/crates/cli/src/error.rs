use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}:{col}: {msg}")]
    Parse {
        path: String,
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] upp2_core::Error),
}

impl CliError {
    pub fn parse(path: &str, line: usize, col: usize, msg: impl Into<String>) -> Self {
        CliError::Parse {
            path: path.to_string(),
            line,
            col,
            msg: msg.into(),
        }
    }

    /// Process exit code: 2 for unusable input, 3 for internal theory
    /// violations, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } => 2,
            CliError::Core(upp2_core::Error::TheoryViolation(_)) => 3,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
