//! Game documents, bundled fixtures and report generation behind the `snc`
//! command line tool.

pub mod commands;
pub mod document;
pub mod fixtures;
pub mod report;

use thiserror::Error;

/// Environment variable overriding the default exhaustive-search caps.
pub const CAP_ENV: &str = "SNC_CAP";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("unknown set `{0}`")]
    UnknownSet(String),
    #[error("unknown profile `{0}`")]
    UnknownProfile(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("sets `{0}` and `{1}` overlap at `{2}`")]
    Overlap(String, String, String),
    #[error("profile `{profile}` gives `{label}` the action {value}, expected +1 or -1")]
    BadAction {
        profile: String,
        label: String,
        value: i64,
    },
    #[error("{0}")]
    Network(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] snc_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// `3` when an exhaustive search would exceed its cap, `1` otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(snc_core::Error::CapExceeded { .. }) => 3,
            _ => 1,
        }
    }
}
