//! Crate-wide error type.

use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the navigation runtime.
#[derive(Debug, Error)]
pub enum NavError {
    /// A caller violated an operation precondition (non-finite input,
    /// out-of-range parameter, non-unit direction, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A document could not be parsed at all.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A document parsed but violates the schema or an invariant.
    #[error("validation error in `{field}`: {message}")]
    Validation { field: String, message: String },

    /// Scenario randomization exhausted its rejection-sampling budget.
    #[error("scenario generation infeasible at index {0}")]
    GenerationInfeasible(usize),

    /// Dataset output could not be written.
    #[error("write error for {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    /// The remote policy sent a malformed or inconsistent frame.
    #[error("protocol error: {0}")]
    Protocol(String),

    /// The remote policy connection closed or failed mid-episode.
    #[error("connection lost: {0}")]
    ConnectionLost(String),
}

impl NavError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        NavError::InvalidInput(msg.into())
    }

    pub fn validation(field: impl Into<String>, msg: impl Into<String>) -> Self {
        NavError::Validation {
            field: field.into(),
            message: msg.into(),
        }
    }
}
