use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] cvinv::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("replay mismatch in {0}")]
    ReplayMismatch(String),
}

impl CliError {
    /// 2 for failures of the measurement/reconstruction stage, 1 for
    /// everything the user can fix in the invocation or the input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_reconstruction_failure() => 2,
            CliError::ReplayMismatch(_) => 2,
            _ => 1,
        }
    }
}
