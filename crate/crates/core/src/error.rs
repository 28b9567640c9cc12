//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failure modes of the symbolic and numeric pipelines.
///
/// The variants are grouped by how the command-line front end reports them:
/// domain/precondition problems, usage problems, and accuracy problems map to
/// distinct exit codes (see [`Error::exit_code`]).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("variable context mismatch: {0}")]
    Context(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("degree limit exceeded: intermediate degree {degree} > {limit}")]
    DegreeLimit { degree: u32, limit: u32 },

    #[error("syntax error at line {line}, column {column}: found {found}, expected one of {}", expected.join(", "))]
    Syntax {
        line: usize,
        column: usize,
        found: String,
        expected: Vec<String>,
    },

    #[error("limit exceeded: {0}")]
    Limit(String),

    #[error("accuracy target not met: {message} (achieved estimate {achieved:e})")]
    Accuracy { message: String, achieved: f64 },

    #[error("ill-conditioned problem: {0}")]
    Conditioning(String),

    #[error("fit failed: {0}")]
    Fit(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Exit code used by the `qdl` binary for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. } | Error::Limit(_) | Error::Io(_) => 2,
            Error::Accuracy { .. } | Error::Conditioning(_) | Error::Fit(_) => 3,
            _ => 1,
        }
    }

    /// Short machine-readable tag for JSON error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Precondition(_) => "precondition",
            Error::Context(_) => "context",
            Error::Unsupported(_) => "unsupported",
            Error::Validation(_) => "validation",
            Error::InsufficientData(_) => "insufficient_data",
            Error::DegreeLimit { .. } => "degree_limit",
            Error::Syntax { .. } => "syntax",
            Error::Limit(_) => "limit",
            Error::Accuracy { .. } => "accuracy",
            Error::Conditioning(_) => "conditioning",
            Error::Fit(_) => "fit",
            Error::Internal(_) => "internal",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
