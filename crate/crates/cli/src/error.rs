use thiserror::Error;

/// Command failures, each tied to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable, malformed or invalid input; exit code 1.
    #[error("{0}")]
    Input(String),
    /// The request has no phase-only solution; exit code 2.
    #[error("{0}")]
    Infeasible(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Infeasible(_) => 2,
        }
    }
}

impl From<polyphase::Error> for CliError {
    fn from(e: polyphase::Error) -> Self {
        if e.is_infeasible() {
            CliError::Infeasible(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
