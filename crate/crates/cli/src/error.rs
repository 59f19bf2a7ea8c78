use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("unresolved {what} reference {name:?}")]
    Unresolved { what: &'static str, name: String },

    #[error("{what} {name:?} declared twice")]
    Duplicate { what: &'static str, name: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] wordhyp_core::Error),
}

impl CliError {
    /// Process exit status; verification failures are reported separately
    /// with status 1.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
