//! Library side of the `caustic` command-line tool: configuration parsing,
//! experiment execution, and file emission.
//!
//! Kept separate from `main.rs` so integration tests can drive the commands
//! directly and compare emitted bytes.

pub mod commands;
pub mod config;
pub mod output;

use caustic_core::Error as CoreError;

/// CLI-level error with a process exit code.
///
/// Exit codes: 0 success, 2 configuration error, 3 geometry error
/// (unsupported scenario layout), 4 numeric error.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Geometry(String),
    Numeric(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Geometry(_) => 3,
            CliError::Numeric(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Geometry(msg) => write!(f, "geometry error: {msg}"),
            CliError::Numeric(msg) => write!(f, "numeric error: {msg}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Map a core error to its CLI class: invalid parameters surface as config
/// errors, unsupported layouts as geometry errors, the rest as numeric.
pub fn classify(e: CoreError) -> CliError {
    match e {
        CoreError::InvalidParameter(_) => CliError::Config(e.to_string()),
        CoreError::UnsupportedGeometry(_) | CoreError::PointInsideDisk => {
            CliError::Geometry(e.to_string())
        }
        _ => CliError::Numeric(e.to_string()),
    }
}
