use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse {what} `{input}`: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("missing data: {0}")]
    MissingData(String),

    #[error("generator `{0}` cannot be eliminated: no relator defines it")]
    NotEliminable(String),

    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: usize, right: usize },

    #[error("step {step}: expected `{expected}` at position {position}, found `{found}`")]
    StepMismatch {
        step: usize,
        position: usize,
        expected: String,
        found: String,
    },

    #[error("integer overflow while evaluating {0}")]
    Overflow(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            what: "json",
            input: String::new(),
            reason: e.to_string(),
        }
    }
}
