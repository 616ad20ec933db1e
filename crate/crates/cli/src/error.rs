use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] tamezeta::Error),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("config {path}: {message}")]
    Config { path: String, message: String },
    #[error("{0} acceptance checks failed")]
    SelftestFailed(usize),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    /// 0 success, 1 selftest failure, 2 invalid or non-tame input, 3 numeric failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::SelftestFailed(_) => 1,
            CliError::Input(_) | CliError::Read { .. } | CliError::Config { .. } => 2,
            CliError::Core(e) if e.is_input_error() => 2,
            CliError::Core(_) | CliError::Write { .. } => 3,
        }
    }
}
