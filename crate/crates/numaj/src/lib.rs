//! File formats, output rendering and the command-line driver for
//! [`numaj_core`].
//!
//! The binary is a thin wrapper around [`cli::main`]. Exit codes are part of
//! the interface: [`EXIT_OK`], [`EXIT_INPUT`], [`EXIT_INVARIANT`] and
//! [`EXIT_VIOLATION`].

pub mod cli;
pub mod commands;
pub mod data;
pub mod document;

pub const EXIT_OK: u8 = 0;
/// Unreadable or invalid input: files, flags, parameter values.
pub const EXIT_INPUT: u8 = 2;
/// An internal consistency check failed.
pub const EXIT_INVARIANT: u8 = 3;
/// A verified inequality was violated.
pub const EXIT_VIOLATION: u8 = 4;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("property violated: {0}")]
    Violation(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Invariant(_) => EXIT_INVARIANT,
            CliError::Violation(_) => EXIT_VIOLATION,
        }
    }
}

impl From<numaj_core::Error> for CliError {
    fn from(e: numaj_core::Error) -> Self {
        use numaj_core::Error as E;
        match e {
            E::Invariant(_) => CliError::Invariant(e.to_string()),
            E::PropertyViolation(_) => CliError::Violation(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}
