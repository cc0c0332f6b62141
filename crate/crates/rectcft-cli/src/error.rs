use std::path::PathBuf;

use rectcft_sim::SimError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("numerical error at xi = {xi}, m = {m}, kappa = {kappa}: {source}")]
    Numerical {
        source: rectcft::Error,
        xi: f64,
        m: f64,
        kappa: f64,
    },

    #[error(transparent)]
    Theory(#[from] rectcft::Error),

    #[error(transparent)]
    Sim(#[from] SimError),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{}: {msg}", path.display())]
    Table { path: PathBuf, msg: String },
}

impl CliError {
    /// 2 for anything wrong with the inputs, 3 for failed evaluations.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::GridMismatch(_) | CliError::Io { .. } | CliError::Table { .. } => 2,
            CliError::Sim(SimError::InvalidSpec(_)) => 2,
            CliError::Numerical { .. } | CliError::Theory(_) | CliError::Sim(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub(crate) fn config<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Config(msg.into()))
}
