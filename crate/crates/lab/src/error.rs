use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{}: invalid config at `{field}`: {message}", path.display())]
    Config { path: PathBuf, field: String, message: String },

    #[error("invalid value for `{field}`: {message}")]
    Invalid { field: String, message: String },

    #[error(transparent)]
    Core(#[from] umbilic_core::Error),

    #[error("{}: {source}", path.display())]
    Json { path: PathBuf, source: serde_json::Error },

    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),

    #[error("reports describe different scenarios: {left} vs {right}")]
    SchemaMismatch { left: String, right: String },

    #[error("invalid UMBILIC_LAB_THREADS value {0:?}")]
    Threads(String),
}

pub type Result<T> = std::result::Result<T, LabError>;

pub(crate) fn invalid(field: &str, message: impl Into<String>) -> LabError {
    LabError::Invalid { field: field.to_string(), message: message.into() }
}
