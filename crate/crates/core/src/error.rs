use thiserror::Error;

/// Errors raised by algebra construction, searches and file handling.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown operation symbol `{0}`")]
    UnknownSymbol(String),

    #[error("symbol `{symbol}` has arity {expected} but was given {found} arguments")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },

    #[error("variable x{index} is out of range for an environment of length {len}")]
    VariableOutOfRange { index: usize, len: usize },

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("size {size} exceeds the configured cap of {cap}")]
    SizeOverflow { size: u128, cap: u128 },

    #[error("partition is not a congruence: {0}")]
    NotACongruence(String),

    #[error("subset is not closed: {symbol}({args:?}) = {result} lies outside it")]
    NotClosed {
        symbol: String,
        args: Vec<usize>,
        result: usize,
    },

    #[error("ground sets differ in size ({0} vs {1})")]
    SizeMismatch(usize, usize),

    #[error("search budget of {0} nodes exceeded")]
    SearchBudgetExceeded(u64),

    #[error("algebra is not a member of the class: {0}")]
    NotMember(String),

    #[error("trivial algebras are neither RSI nor RFSI")]
    TrivialAlgebra,

    #[error("element {element} is related to {count} elements of the subalgebra")]
    NotUnique { element: usize, count: usize },

    #[error("element {element} is not related to any element of the subalgebra")]
    NotCovered { element: usize },

    #[error("unknown catalog key `{0}`")]
    UnknownKey(String),

    #[error("bad catalog parameters: {0}")]
    BadParams(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("certificate rejected: {0}")]
    CertificateRejected(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Budget and size-cap failures, as opposed to bad input.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::SizeOverflow { .. } | Error::SearchBudgetExceeded(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
