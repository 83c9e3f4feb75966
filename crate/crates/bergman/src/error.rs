use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameters: {0}")]
    Validation(#[from] bergman_core::Error),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::UnknownSuite(_) => 4,
            CliError::Io(_) => 1,
        }
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        CliError::Parse(msg.into())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
