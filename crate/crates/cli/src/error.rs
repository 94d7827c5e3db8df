use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown experiment `{name}`; valid experiments: {}", .valid.join(", "))]
    UnknownExperiment { name: String, valid: Vec<String> },
    #[error(
        "unknown key `{key}` for experiment `{experiment}`{}; valid keys: {}",
        .suggestion.as_ref().map(|s| format!(" (did you mean `{s}`?)")).unwrap_or_default(),
        .valid.join(", ")
    )]
    UnknownKey {
        key: String,
        experiment: String,
        suggestion: Option<String>,
        valid: Vec<String>,
    },
    #[error("bad value for `{key}`: expected {expected}, got `{value}`")]
    BadValue { key: String, value: String, expected: String },
    #[error("malformed override `{0}`, expected key=value")]
    MalformedOverride(String),
    #[error("cannot parse {path}: {msg}")]
    Config { path: PathBuf, msg: String },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{context}: {source}")]
    Solver {
        context: String,
        source: springs_core::Error,
    },
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Attaches experiment context to core errors.
pub trait Context<T> {
    fn context(self, what: &str) -> Result<T>;
}

impl<T> Context<T> for springs_core::Result<T> {
    fn context(self, what: &str) -> Result<T> {
        self.map_err(|source| CliError::Solver { context: what.to_string(), source })
    }
}
