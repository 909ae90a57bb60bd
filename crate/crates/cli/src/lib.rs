//! File formats and subcommands behind the `wavefront` binary.

pub mod commands;
pub mod output;

use std::path::{Path, PathBuf};

use thiserror::Error;
use wavefront::experiment::{ExperimentConfig, ExperimentError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config {path}: {message}")]
    Config { path: PathBuf, message: String },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Scene(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config { .. } | Self::Input(_) => 1,
            Self::Scene(_) => 2,
            Self::Io { .. } => 3,
        }
    }

    pub(crate) fn io(path: &Path) -> impl FnOnce(std::io::Error) -> Self + '_ {
        move |source| Self::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub(crate) fn from_experiment(path: &Path, e: ExperimentError) -> Self {
        match e {
            ExperimentError::Config { key, reason } => Self::Config {
                path: path.to_path_buf(),
                message: format!("key `{key}`: {reason}"),
            },
            other => Self::Scene(other.to_string()),
        }
    }
}

/// Reads a TOML config. Missing keys take their defaults; unknown keys and
/// invalid values are errors that name the key.
pub fn load_config(path: &Path) -> Result<ExperimentConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(CliError::io(path))?;
    parse_config(&text).map_err(|message| CliError::Config {
        path: path.to_path_buf(),
        message,
    })
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig, String> {
    let config: ExperimentConfig = toml::from_str(text).map_err(|e| e.to_string())?;
    match config.validate() {
        Ok(()) => Ok(config),
        Err(ExperimentError::Config { key, reason }) => Err(format!("key `{key}`: {reason}")),
        Err(e) => Err(e.to_string()),
    }
}
