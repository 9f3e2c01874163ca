use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite covariance entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("unphysical state: {0}")]
    Unphysical(String),

    #[error("unphysical measurement: {0}")]
    UnphysicalMeasurement(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("numerical domain error: {0}")]
    NumericalDomain(String),

    #[error("reconstruction failed: {0}")]
    Reconstruction(String),

    #[error("unknown {kind} `{name}` (known: {known})")]
    Unknown {
        kind: &'static str,
        name: String,
        known: String,
    },

    #[error("malformed file: {0}")]
    Format(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of the measurement/reconstruction stage, as opposed
    /// to bad inputs or configuration.
    pub fn is_reconstruction_failure(&self) -> bool {
        matches!(
            self,
            Error::Reconstruction(_) | Error::UnphysicalMeasurement(_) | Error::NumericalDomain(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
