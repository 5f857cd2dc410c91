use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or ill-formed input: bad endpoints, non-surjective maps,
    /// mismatched sample spaces, out-of-range substitutions and the like.
    #[error("input: {0}")]
    Input(String),

    #[error("parse: line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A separating conjunction would have to enumerate witness partitions of
    /// more atoms than the configured budget allows.
    #[error("budget: {atoms} atoms exceed the enumeration budget of {budget}")]
    Budget { atoms: usize, budget: usize },
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Error {
        Error::Input(msg.into())
    }

    /// Short machine-readable tag for the error class.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Input(_) => "input",
            Error::Parse { .. } => "parse",
            Error::Budget { .. } => "budget",
        }
    }
}
