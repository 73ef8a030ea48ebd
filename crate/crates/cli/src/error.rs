use std::process::ExitCode;

use thiserror::Error;

/// A failed invocation. Input errors exit with 2; failures of a
/// mathematical precondition exit with 1.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("{0}")]
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code())
    }

    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Math(_) => 1,
        }
    }
}

impl From<cosegal::Error> for CliError {
    fn from(e: cosegal::Error) -> Self {
        match e {
            cosegal::Error::Precondition(_) | cosegal::Error::IllDefined(_) => CliError::Math(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}
