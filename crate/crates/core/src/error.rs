use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input file or record.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("index {index} out of range for a domain of size {domain_size}")]
    IndexOutOfRange { index: usize, domain_size: usize },

    #[error("budget of {limit} elementary checks exceeded")]
    BudgetExceeded { limit: u64 },

    #[error("concept class is empty")]
    EmptyClass,

    #[error("sample is not realizable: {0}")]
    NotRealizable(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An internal self-check failed; indicates a construction bug or corrupt input.
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::BudgetExceeded { .. } => 3,
            Error::IndexOutOfRange { .. }
            | Error::EmptyClass
            | Error::NotRealizable(_)
            | Error::Precondition(_) => 4,
            Error::Verification(_) => 5,
        }
    }
}
