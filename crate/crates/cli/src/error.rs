use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),

    #[error("{0}")]
    TooLarge(String),

    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Input(_) => ExitCode::from(2),
            CliError::TooLarge(_) => ExitCode::from(4),
            CliError::Internal(_) => ExitCode::from(1),
        }
    }
}

impl From<cac_core::Error> for CliError {
    fn from(e: cac_core::Error) -> Self {
        match e {
            cac_core::Error::TooLarge { .. } | cac_core::Error::EnumerationTooLarge { .. } => {
                CliError::TooLarge(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
