use std::path::PathBuf;

use serde_json::json;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] ncho_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("writing output: {0}")]
    Write(String),
    #[error("no certified points to write")]
    NoCertifiedPoints,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use ncho_core::Error as E;
        match self {
            CliError::Config(_) => 2,
            CliError::Core(E::InvalidParams { .. } | E::InvalidArgument(_)) => 2,
            CliError::Core(E::NotCertifiable { .. }) | CliError::NoCertifiedPoints => 3,
            CliError::Io { .. } | CliError::Write(_) => 4,
            CliError::Core(E::IndexOutOfRange { .. }) => 5,
            CliError::Core(E::NoConvergence { .. } | E::RecursionCheckFailed { .. }) => 6,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            2 => "config",
            3 => "not_certifiable",
            4 => "io",
            5 => "index_out_of_range",
            _ => "numerical",
        }
    }

    /// `{"error": {"kind", "message", "exit_code"}}`.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "error": {
                "kind": self.kind(),
                "message": self.to_string(),
                "exit_code": self.exit_code(),
            }
        })
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Write(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Write(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Write(e.to_string())
    }
}
