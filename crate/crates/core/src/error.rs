use thiserror::Error;

/// Errors raised by the library.
///
/// The variants map onto the process exit codes used by the command-line
/// front end: claim failures are not errors (they are reported), budget
/// overruns exit with 2 and configuration mistakes with 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a locally free direct summand: {0}")]
    NotDirectSummand(String),

    #[error("degenerate bilinear form")]
    DegenerateForm,

    #[error("enumeration budget exceeded: need {needed} evaluations, budget is {budget}")]
    Budget { needed: u128, budget: u128 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Exit code used by the command-line tool for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Verification(_) => 1,
            Error::Budget { .. } => 2,
            Error::Config(_) | Error::InvalidField(_) => 3,
            _ => 1,
        }
    }
}
