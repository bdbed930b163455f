use std::path::PathBuf;

use spinplanar::SpinError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{path}: {message}")]
    Input { path: PathBuf, message: String },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Spin(#[from] SpinError),
}

impl CliError {
    pub fn input(path: &std::path::Path, err: impl std::fmt::Display) -> Self {
        CliError::Input { path: path.to_owned(), message: err.to_string() }
    }

    /// 1 for a negative verdict, 2 for bad input, 3 for a refused run.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Spin(SpinError::ResourceCap(_)) => 3,
            CliError::Spin(SpinError::NotBiunitary { .. } | SpinError::Validation { .. }) => 1,
            _ => 2,
        }
    }
}
