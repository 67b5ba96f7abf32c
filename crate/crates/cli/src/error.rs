//! Error categories with machine-parsable stderr lines and exit codes.

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Bad or missing configuration (exit code 2).
    Config(String),
    /// Filesystem failures (exit code 3).
    Io(String),
    /// Model evaluation failures (exit code 4).
    Compute(String),
}

impl CliError {
    pub fn config(message: String) -> Self {
        CliError::Config(message)
    }

    pub fn io(message: String) -> Self {
        CliError::Io(message)
    }

    pub fn compute(message: String) -> Self {
        CliError::Compute(message)
    }

    pub fn category(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Io(_) => "io",
            CliError::Compute(_) => "compute",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
            CliError::Compute(_) => 4,
        }
    }

    /// The single stderr line: `error[<category>]: <message>`.
    pub fn stderr_line(&self) -> String {
        let message = match self {
            CliError::Config(m) | CliError::Io(m) | CliError::Compute(m) => m,
        };
        format!("error[{}]: {}", self.category(), message.replace('\n', " "))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.stderr_line())
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err.to_string())
    }
}

impl From<sagnac_core::ExperimentError> for CliError {
    fn from(err: sagnac_core::ExperimentError) -> Self {
        CliError::Compute(err.to_string())
    }
}

impl From<sagnac_core::DetectionError> for CliError {
    fn from(err: sagnac_core::DetectionError) -> Self {
        CliError::Compute(err.to_string())
    }
}

impl From<sagnac_core::OpticsError> for CliError {
    fn from(err: sagnac_core::OpticsError) -> Self {
        CliError::Compute(err.to_string())
    }
}

impl From<sagnac_core::BeamError> for CliError {
    fn from(err: sagnac_core::BeamError) -> Self {
        CliError::Config(err.to_string())
    }
}
