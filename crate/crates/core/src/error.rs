use thiserror::Error;

/// Errors raised by the coding, decoding and analysis routines.
///
/// Wire numbers carried in messages are 1-based.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid bit string: {0}")]
    InvalidBits(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("Fibonacci index must be at least 1")]
    FibonacciIndexZero,

    #[error("index {index} out of range (codebook size {size})")]
    IndexOutOfRange { index: String, size: String },

    #[error("opposing transition on wires ({l}, {r})", l = .0 + 1, r = .1 + 1)]
    ConstraintViolation(usize, usize),

    #[error("wire {w} is not a free wire of the past state", w = .0 + 1)]
    WireNotFree(usize),

    #[error("past bits {0:?} do not form an alternating run")]
    NotAlternating(Vec<u8>),

    #[error("recovered index is outside the payload range")]
    UnusedIndex,

    #[error("invalid degree distribution: {0}")]
    InvalidDistribution(String),

    #[error("rate {0} out of range: {1}")]
    RateOutOfRange(f64, &'static str),

    #[error("cannot balance sockets: {0}")]
    SocketImbalance(String),

    #[error("need {needed} parity carriers but only {available} can be placed")]
    InsufficientWires { needed: usize, available: usize },

    #[error("graph does not match layout: {0}")]
    GraphMismatch(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),

    #[error("contradictory incoming messages on edge {0}")]
    Contradiction(usize),

    #[error("{0} erasures could not be resolved")]
    Unresolved(usize),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
