use std::path::PathBuf;

use nomacdrt::Violation;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}:{line}: {message}")]
    Config {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{0}")]
    Core(#[from] nomacdrt::Error),

    #[error("no rows to emit")]
    EmptyResult,

    #[error("{0}")]
    Io(#[from] std::io::Error),

    #[error("{0}")]
    Encode(String),

    #[error("selftest failed\n{0}")]
    SelftestFailed(String),
}

#[derive(Serialize)]
struct Payload<'a> {
    error: Body<'a>,
}

#[derive(Serialize)]
struct Body<'a> {
    kind: &'static str,
    message: String,
    #[serde(skip_serializing_if = "<[Violation]>::is_empty")]
    violations: &'a [Violation],
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Config { .. } => "config",
            CliError::Core(nomacdrt::Error::Validation(_)) => "validation",
            CliError::Core(nomacdrt::Error::Quadrature { .. }) => "numeric",
            CliError::Core(nomacdrt::Error::Domain { .. } | nomacdrt::Error::Range { .. }) => "numeric",
            CliError::Core(_) => "invalid_argument",
            CliError::EmptyResult => "empty_result",
            CliError::Io(_) => "io",
            CliError::Encode(_) => "encode",
            CliError::SelftestFailed(_) => "selftest_failed",
        }
    }

    /// Process exit status.
    pub fn exit_code(&self) -> i32 {
        match self.kind() {
            "usage" | "config" | "invalid_argument" => 2,
            "validation" => 3,
            "numeric" | "selftest_failed" => 4,
            "empty_result" => 5,
            _ => 1,
        }
    }

    /// One-line JSON description for stderr.
    pub fn to_json(&self) -> String {
        let violations: &[Violation] = match self {
            CliError::Core(nomacdrt::Error::Validation(v)) => v,
            _ => &[],
        };
        let payload = Payload {
            error: Body {
                kind: self.kind(),
                message: self.to_string(),
                violations,
            },
        };
        serde_json::to_string(&payload).unwrap_or_else(|_| r#"{"error":{"kind":"encode"}}"#.into())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Encode(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Encode(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
