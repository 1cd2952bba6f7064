use thiserror::Error;

use crate::sequence::Word;

#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(char),
    #[error("not a prefix code: {0}")]
    NotPrefixCode(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("elements belong to different machines ({0} vs {1})")]
    MachineMismatch(String, String),
    #[error("malformed machine: state {state} has no transition for input {input}")]
    MalformedMachine { state: String, input: Word },
    #[error("refinement exceeded the depth bound of {bound} weight units at input {input}")]
    DepthExceeded { bound: u32, input: Word },
    #[error("weight mismatch: {0}")]
    WeightMismatch(String),
    #[error("{0} is a singular point")]
    SingularPoint(String),
    #[error("shift window exhausted at offset {0}")]
    WindowExhausted(i64),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
