use thiserror::Error;

use crate::word::Word;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An operation needed a p-adic digit that is not carried.
    #[error("p-adic precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("division by a value that is zero to the carried precision")]
    DivisionByZero,

    #[error("p-adic context mismatch: (p={left_prime}, N={left_precision}) vs (p={right_prime}, N={right_precision})")]
    ContextMismatch {
        left_prime: u64,
        left_precision: u32,
        right_prime: u64,
        right_precision: u32,
    },

    #[error("invalid p-adic context: {0}")]
    InvalidContext(String),

    #[error("matrix is singular to the carried precision")]
    Singular,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("paths do not share an origin")]
    OriginMismatch,

    #[error("element is not hyperbolic")]
    NotHyperbolic,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// Raised by operations that need a free basis when the reduction
    /// produced a non-trivial elliptic element instead.
    #[error("reduction produced a non-trivial elliptic element")]
    EllipticEncountered,

    /// The Nielsen reduction loop failed part way through. `words` is the
    /// last consistent generating set, written over the input generators.
    #[error("reduction aborted at iteration {iteration}: {source}")]
    ReductionAborted {
        iteration: usize,
        words: Vec<Word>,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn precision(what: impl Into<String>) -> Self {
        Error::PrecisionExhausted(what.into())
    }

    /// True when this error, or the error it wraps, is a precision failure.
    pub fn is_precision_exhausted(&self) -> bool {
        match self {
            Error::PrecisionExhausted(_) => true,
            Error::ReductionAborted { source, .. } => source.is_precision_exhausted(),
            _ => false,
        }
    }
}
