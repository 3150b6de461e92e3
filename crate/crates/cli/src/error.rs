use std::io;
use std::path::PathBuf;

use frame_equiv::FrameError;
use thiserror::Error;

/// Process exit codes. `0..=2` report a decision, the rest are failures.
pub mod exit {
    pub const EQUIVALENT: u8 = 0;
    pub const NOT_EQUIVALENT: u8 = 1;
    pub const LIKELY_EQUIVALENT: u8 = 2;
    pub const USAGE: u8 = 64;
    pub const DATA: u8 = 65;
    pub const INTERNAL: u8 = 70;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}: parse error: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{path}: invalid frame: {source}")]
    Validation { path: PathBuf, source: FrameError },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Parse { .. } | CliError::Validation { .. } => exit::DATA,
            CliError::Frame(e) => match e {
                FrameError::NotPlanar { .. } | FrameError::TooLarge { .. } | FrameError::InvalidParameter(_) => {
                    exit::USAGE
                }
                FrameError::DimensionMismatch { .. } | FrameError::CountMismatch { .. } => exit::DATA,
                _ => exit::INTERNAL,
            },
            CliError::Io { .. } | CliError::Csv(_) => exit::INTERNAL,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
