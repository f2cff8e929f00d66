use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at column {pos}: {message}")]
    Parse { pos: usize, message: String },

    #[error("evaluation error at column {pos}: {source}")]
    Eval { pos: usize, source: rinehart::Error },

    #[error("{0}")]
    Usage(String),

    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },

    #[error("invalid document {path}: {source}")]
    Document { path: PathBuf, source: rinehart::Error },

    #[error(transparent)]
    Core(#[from] rinehart::Error),
}

impl CliError {
    pub(crate) fn parse(pos: usize, message: impl Into<String>) -> Self {
        CliError::Parse {
            pos,
            message: message.into(),
        }
    }

    /// 2 for usage, parse and evaluation errors, 3 for unreadable or
    /// invalid pair and morphism documents.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Read { .. } | CliError::Document { .. } => 3,
            _ => 2,
        }
    }
}
