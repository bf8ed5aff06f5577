use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {0}", .0.kind())]
    Core(#[from] gtvar::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid sweep config: {0}")]
    Config(String),

    #[error("{0} sweep check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 2 for bad input, 3 when the cohomology formulas do not apply, 4 for
    /// resource or I/O failures, 1 for failed sweep checks and anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_spec_error() => 2,
            CliError::Core(gtvar::Error::InvalidArgument(_)) => 2,
            CliError::Core(gtvar::Error::NotLevelGt(_)) => 3,
            CliError::Core(gtvar::Error::ResourceBound { .. }) => 4,
            CliError::Core(_) => 1,
            CliError::Io { .. } => 4,
            CliError::Config(_) => 2,
            CliError::ChecksFailed(_) => 1,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
