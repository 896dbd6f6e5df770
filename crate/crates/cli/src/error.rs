use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown material '{name}'; available: {}", available.join(", "))]
    UnknownMaterial { name: String, available: Vec<String> },
    #[error("catalog error at {path}: {message}")]
    Catalog { path: String, message: String },
    #[error("config error at {path}: {message}")]
    Config { path: String, message: String },
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error("computation failed: {0}")]
    Core(#[from] casimir_core::Error),
    #[error("output error: {0}")]
    Output(String),
}

impl CliError {
    pub fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Config {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(_) => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
