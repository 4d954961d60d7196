use std::path::PathBuf;

use thiserror::Error;

/// Invalid configuration, located by its dotted field path.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{path}: {reason}")]
pub struct ConfigError {
    pub path: String,
    pub reason: String,
}

impl ConfigError {
    pub fn new(path: impl Into<String>, reason: impl Into<String>) -> Self {
        Self { path: path.into(), reason: reason.into() }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(#[from] ConfigError),

    #[error("{0}")]
    NoBoundState(lee_core::Error),

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("numerical failure: {0}")]
    Numerical(lee_core::Error),
}

impl CliError {
    /// Process exit status: 2 config, 3 no bound state, 4 I/O, 1 anything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::NoBoundState(_) => 3,
            CliError::Io { .. } => 4,
            CliError::Numerical(_) => 1,
        }
    }
}

impl From<lee_core::Error> for CliError {
    fn from(e: lee_core::Error) -> Self {
        match e {
            lee_core::Error::NoBoundState { .. } => CliError::NoBoundState(e),
            other => CliError::Numerical(other),
        }
    }
}
