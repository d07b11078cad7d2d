use std::io;
use std::path::PathBuf;

use thiserror::Error;

use crate::checkpoint::CheckpointError;
use crate::idx::IdxError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Process exit status for each failure class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    Config = 2,
    Data = 3,
    Numerical = 4,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Idx(#[from] IdxError),
    #[error(transparent)]
    Checkpoint(#[from] CheckpointError),
    #[error("{path}: {message}")]
    MatrixFile { path: PathBuf, message: String },
    #[error("dataset: {0}")]
    Data(String),
    #[error(transparent)]
    Core(#[from] mpsplit_core::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        use mpsplit_core::Error as Core;
        match self {
            Error::Config(_) => ExitCode::Config,
            Error::Io { .. }
            | Error::Idx(_)
            | Error::Checkpoint(_)
            | Error::MatrixFile { .. }
            | Error::Data(_) => ExitCode::Data,
            Error::Core(Core::Numerical(_) | Core::DegenerateSpectrum) => ExitCode::Numerical,
            Error::Core(Core::DimensionMismatch { .. }) => ExitCode::Data,
            Error::Core(_) => ExitCode::Config,
        }
    }
}
