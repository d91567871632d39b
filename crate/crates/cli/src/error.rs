use thiserror::Error;

/// Problems reading an input document.
#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(#[from] InputError),
    #[error(transparent)]
    Compute(#[from] bellgems_core::Error),
    #[error("writing output: {0}")]
    Output(#[source] std::io::Error),
}

impl CliError {
    /// 1 for computation failures, 3 for unreadable or invalid input, 4 for
    /// output failures. Usage errors (2) are produced by the argument parser.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute(_) => 1,
            CliError::Input(_) => 3,
            CliError::Output(_) => 4,
        }
    }
}
