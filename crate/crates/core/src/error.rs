use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("empty input: no words")]
    EmptyInput,

    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("the empty word belongs to the language")]
    EmptyWordInLanguage,

    #[error("the language has no words")]
    EmptyLanguage,

    #[error("word `{0}` does not belong to X*")]
    NotInStar(String),

    #[error("subset search exceeded the cap of {cap} distinct subsets")]
    SubsetCapExceeded { cap: usize },

    #[error("search budget of {budget} candidates exhausted before a decision")]
    BudgetExhausted { budget: u64 },

    #[error("enumeration of {count} candidate languages exceeds the cap of {cap}")]
    InstanceCapExceeded { count: u128, cap: u128 },

    #[error("automaton has a cycle avoiding the base state")]
    InfiniteReturnSet,

    #[error("automaton is not deterministic and complete")]
    NotCompleteDfa,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
