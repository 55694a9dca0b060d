use std::fmt;

use toric_degen::{PipelineError, PolytopeError};

pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_UNSUPPORTED: u8 = 3;

/// A failure with the process exit code it maps to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> Self {
        CliError { code: EXIT_VALIDATION, message: message.into() }
    }

    pub fn unsupported(message: impl Into<String>) -> Self {
        CliError { code: EXIT_UNSUPPORTED, message: message.into() }
    }

    pub fn from_polytope(e: PolytopeError) -> Self {
        match e {
            PolytopeError::UnsupportedDimension { .. } => CliError::unsupported(e.to_string()),
            other => CliError::validation(other.to_string()),
        }
    }

    pub fn from_pipeline(e: PipelineError) -> Self {
        match e {
            PipelineError::Polytope(p) => CliError::from_polytope(p),
            other => CliError::validation(other.to_string()),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}
