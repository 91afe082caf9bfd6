use thiserror::Error;

/// Exit code 0: overall pass. 1: an identity failed. 2: configuration error.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_IDENTITY_FAILURE: i32 = 1;
pub const EXIT_CONFIG_ERROR: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),

    /// A run that completed but failed its identity checks.
    #[error("{0}")]
    IdentityFailure(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::IdentityFailure(_) => EXIT_IDENTITY_FAILURE,
            _ => EXIT_CONFIG_ERROR,
        }
    }
}

impl From<soliton_engine::SolitonError> for CliError {
    fn from(e: soliton_engine::SolitonError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<warped_geometry::WarpedError> for CliError {
    fn from(e: warped_geometry::WarpedError) -> Self {
        CliError::Config(e.to_string())
    }
}
