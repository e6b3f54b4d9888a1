//! Error type shared across the library.

use thiserror::Error;

/// Errors produced by parsing, synthesis, and validation routines.
#[derive(Debug, Error)]
pub enum Error {
    /// A series violated a structural invariant (length, negative or
    /// non-finite values).
    #[error("invalid series '{label}': {reason}")]
    InvalidSeries { label: String, reason: String },

    /// An operation that needs a non-zero series got an all-zero one.
    #[error("degenerate series '{0}': all values are zero")]
    DegenerateSeries(String),

    /// A precondition on an operation argument was violated.
    #[error("{0}")]
    InvalidInput(String),

    /// A text input failed to parse. `line` is 1-based and counts the
    /// header when the format has one.
    #[error("parse error{}{}: {msg}", source_label(.file), line_label(.line))]
    Parse {
        file: Option<String>,
        line: Option<usize>,
        msg: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

fn source_label(file: &Option<String>) -> String {
    match file {
        Some(f) => format!(" in {f}"),
        None => String::new(),
    }
}

fn line_label(line: &Option<usize>) -> String {
    match line {
        Some(n) => format!(" at line {n}"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn parse(file: Option<&str>, line: Option<usize>, msg: impl Into<String>) -> Self {
        Error::Parse {
            file: file.map(str::to_owned),
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
