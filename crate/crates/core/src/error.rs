use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input is empty")]
    EmptyInput,

    #[error("malformed parse: {0}")]
    MalformedParse(String),

    /// A copy phrase whose source does not start and end on phrase boundaries.
    #[error("parse is not boundary-aligned: {0}")]
    Alignment(String),

    #[error("grammar has unexpected shape: {0}")]
    Shape(String),

    #[error("invalid grammar: {0}")]
    InvalidGrammar(String),

    #[error("grammar is cyclic at nonterminal {0}")]
    Cyclic(usize),

    #[error("base must be at least 2, got {0}")]
    BadBase(usize),

    #[error("position {pos} (length {len}) out of range for text of length {n}")]
    OutOfRange { pos: usize, len: usize, n: usize },

    #[error("invalid block structure: {0}")]
    InvalidStructure(String),

    #[error("block {index} of level {level} is not stored")]
    MissingBlock { level: usize, index: usize },

    #[error("input of length {0} exceeds the exhaustive search limit")]
    TooLarge(usize),

    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
}

impl Error {
    pub(crate) fn format(line: usize, msg: impl Into<String>) -> Self {
        Error::Format {
            line,
            msg: msg.into(),
        }
    }
}
