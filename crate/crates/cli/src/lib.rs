//! Front end for `pingpong-core`: JSON reports, region files, SVG figures
//! and the `pingpong` command.

pub mod commands;
pub mod config;
pub mod dto;
pub mod svg;

use pingpong_core::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 2;
    pub const DOMAIN_GATE: i32 = 3;
    pub const UNDECIDABLE: i32 = 4;
    pub const PREREQUISITE: i32 = 5;
    pub const IO: i32 = 6;
    pub const REFUSED: i32 = 7;
    pub const CONFIG: i32 = 8;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                Error::DomainGate(_) => exit::DOMAIN_GATE,
                Error::Undecidable(_) => exit::UNDECIDABLE,
                Error::PrerequisiteFailed(_) => exit::PREREQUISITE,
                Error::Refused(_) | Error::Precision(_) => exit::REFUSED,
                Error::Parse(_) | Error::InvalidInput(_) | Error::ZeroDenominator | Error::DivisionByZero => {
                    exit::USAGE
                }
            },
            CliError::Usage(_) => exit::USAGE,
            CliError::Config(_) => exit::CONFIG,
            CliError::Io(_) | CliError::Json(_) => exit::IO,
        }
    }
}
