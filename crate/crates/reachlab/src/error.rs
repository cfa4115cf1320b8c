use thiserror::Error;

/// Failure of a CLI invocation, mapped onto the documented exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config parse error: {0}")]
    Parse(String),
    #[error("config validation error: {0}")]
    Validation(String),
    #[error("{0}")]
    Run(#[from] reachlab_core::Error),
    #[error("cannot write {path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    /// 2 for parse errors, 3 for validation errors, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Run(_) | CliError::Io { .. } => 1,
        }
    }
}
