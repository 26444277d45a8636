use gsqueeze_core::Error as CoreError;
use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    NotConverged(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("thread pool: {0}")]
    Threads(String),
    #[error("{0}")]
    ChecksFailed(String),
}

impl CliError {
    /// 2 for rejected input, 3 for numerical non-convergence, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::NotConverged(_) => 3,
            CliError::Core(e) => match e {
                CoreError::Domain { .. } | CoreError::Invalid(_) | CoreError::DimensionMismatch { .. } => 2,
                CoreError::Convergence { .. } | CoreError::Truncation { .. } | CoreError::Consistency { .. } => 3,
            },
            CliError::Io(_) | CliError::Csv(_) | CliError::Threads(_) | CliError::ChecksFailed(_) => 1,
        }
    }

    pub fn to_exit(&self) -> ExitCode {
        ExitCode::from(self.exit_code())
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}
