use thiserror::Error;

use crate::paths::StateId;
use crate::rational::Rational;

/// A state map was applied to a state outside its domain.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("state {state} is outside the domain of the state map")]
pub struct DomainError {
    pub state: StateId,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("outgoing probabilities of state `{state}` sum to {sum}, expected 0 or 1")]
    RowSum { state: String, sum: Rational },
    #[error("system has {states} states, the exhaustive oracle is limited to {limit}")]
    TooLarge { states: usize, limit: usize },
    #[error("quotient construction failed: {0}")]
    Quotient(String),
    #[error("no coarsest delay bisimulation among the valid partitions")]
    NoCoarsest,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
