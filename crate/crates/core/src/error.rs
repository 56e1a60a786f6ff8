use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),
    #[error("enumerating {what} needs {requested} values, above the cap of {cap}")]
    EnumerationCap { what: String, requested: String, cap: String },
    #[error("alphabets differ: {0} vs {1}")]
    AlphabetMismatch(String, String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("`{0}` is not a counterexample for the current hypothesis")]
    NotACounterexample(String),
    #[error("table is not closed: row of {0} has no decomposition")]
    NotClosed(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
