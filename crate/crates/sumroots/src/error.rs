use thiserror::Error;

use sumroots_core::Error as CoreError;

/// Exit statuses of the command-line tool.
pub mod exit {
    pub const OK: u8 = 0;
    pub const CONFIG: u8 = 2;
    pub const INVARIANT: u8 = 3;
    pub const LIMIT: u8 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments or input data.
    #[error("{0}")]
    Config(String),
    /// A theorem-backed check failed.
    #[error("invariant violated: {0}")]
    Invariant(String),
    /// A cap or search budget was exceeded.
    #[error("limit exceeded: {0}")]
    Limit(String),
    #[error("malformed record: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Format(_) | CliError::Io(_) => exit::CONFIG,
            CliError::Invariant(_) => exit::INVARIANT,
            CliError::Limit(_) => exit::LIMIT,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let msg = e.to_string();
        match e {
            CoreError::MultiplicityShortfall { .. }
            | CoreError::BoundViolated(_)
            | CoreError::CorollaryViolated(_)
            | CoreError::ZeroPolynomial
            | CoreError::ZeroInverse => CliError::Invariant(msg),
            CoreError::BudgetExceeded { .. } | CoreError::CapExceeded { .. } | CoreError::NotExact => {
                CliError::Limit(msg)
            }
            _ => CliError::Config(msg),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Format(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(std::io::Error::other(e))
    }
}

pub type CliResult<T> = Result<T, CliError>;
