use thiserror::Error;

/// Failures of a command, each with a fixed exit status.
#[derive(Debug, Error)]
pub enum LabError {
    /// Bad or missing configuration.
    #[error("config: {0}")]
    Config(String),
    /// A desk-scale cap would be exceeded.
    #[error("cap: {0}")]
    Cap(String),
    /// A numerical routine refused or failed.
    #[error("numerics: {0}")]
    Numerics(String),
    /// Filesystem trouble.
    #[error("io: {0}")]
    Io(String),
}

impl LabError {
    /// 2 for config, 3 for numerics, 4 for caps, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Config(_) => 2,
            LabError::Numerics(_) => 3,
            LabError::Cap(_) => 4,
            LabError::Io(_) => 1,
        }
    }
}

impl From<landau_core::Error> for LabError {
    fn from(e: landau_core::Error) -> Self {
        match e {
            landau_core::Error::CapExceeded { .. } => LabError::Cap(e.to_string()),
            landau_core::Error::InvalidArgument(_) => LabError::Config(e.to_string()),
            _ => LabError::Numerics(e.to_string()),
        }
    }
}

impl From<std::io::Error> for LabError {
    fn from(e: std::io::Error) -> Self {
        LabError::Io(e.to_string())
    }
}

impl From<csv::Error> for LabError {
    fn from(e: csv::Error) -> Self {
        LabError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for LabError {
    fn from(e: serde_json::Error) -> Self {
        LabError::Io(e.to_string())
    }
}
