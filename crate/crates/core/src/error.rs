use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dilation: {0}")]
    InvalidDilation(String),

    #[error("digit {digit:?} is out of range for dilation {diag:?}")]
    InvalidDigit { digit: Vec<u32>, diag: Vec<u32> },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("word has a nonzero periodic tail; an integer value needs a finite word")]
    PeriodicWord,

    #[error("depth {depth} is too small to hold the expansion of {value}")]
    InsufficientDepth { value: i64, depth: usize },

    #[error("cannot shift an empty aperiodic word")]
    EmptyWord,

    #[error("solenoid point violates beta-compatibility at coordinate {index}")]
    Incompatible { index: usize },

    #[error("exact arithmetic requested but {0}")]
    NotExact(&'static str),

    #[error("Laurent expansion needs {needed} terms, above the cap of {cap}")]
    TermCap { cap: usize, needed: usize },

    #[error("exact coefficient overflow in cyclotomic arithmetic")]
    ExactOverflow,

    #[error("all children of the cylinder at depth {depth} have zero mass")]
    ZeroMassPath { depth: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
