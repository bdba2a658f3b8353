//! Library side of the `curvkind` command-line tool: document loading,
//! analysis reports, model dumps and the ensemble verifiers.

use std::fmt;

use curvkind_core::{CurvError, DocumentError};

pub mod analyze;
pub mod format;
pub mod model;
pub mod verify;

/// Failure classes with the exit codes of the command-line contract.
#[derive(Debug)]
pub enum CliError {
    /// A checked property failed (exit 1).
    Violation(String),
    /// Input parsed but is not a valid tensor, model or argument (exit 2).
    Validation(String),
    /// Input could not be read or parsed (exit 3).
    Parse(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Violation(_) => 1,
            Self::Validation(_) => 2,
            Self::Parse(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Violation(m) => write!(f, "violation: {m}"),
            Self::Validation(m) => write!(f, "invalid input: {m}"),
            Self::Parse(m) => write!(f, "parse error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CurvError> for CliError {
    fn from(e: CurvError) -> Self {
        Self::Validation(e.to_string())
    }
}

impl From<DocumentError> for CliError {
    fn from(e: DocumentError) -> Self {
        match e {
            DocumentError::Parse(m) => Self::Parse(m),
            DocumentError::Invalid(e) => e.into(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Output flavour shared by the subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

pub(crate) fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}
