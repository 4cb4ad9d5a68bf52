use std::fmt;

use monodec::Error;

/// A failure together with the process exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable input, malformed JSON/CSV, bad arguments: exit 1.
    Input(String),
    /// Instance larger than an operation's limit: exit 2.
    Size(String),
    /// Input violates the operation's mathematical precondition: exit 3.
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Size(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "error: {m}"),
            CliError::Size(m) => write!(f, "refused: {m}"),
            CliError::Precondition(m) => write!(f, "precondition failed: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::GroundSize(_) => CliError::Size(msg),
            Error::NotNormalized(_)
            | Error::NotSubmodular(_)
            | Error::NotIncreasing { .. }
            | Error::Negative(_)
            | Error::NotMajorized(_)
            | Error::NotWeaklyInfiniteAlternating(_)
            | Error::NegativeCoefficient(_)
            | Error::CliqueRecovery { .. } => CliError::Precondition(msg),
            _ => CliError::Input(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(format!("invalid JSON: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
