use thiserror::Error;

/// Errors raised by the automata kernel and the verification engines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet mismatch: {left:?} vs {right:?}")]
    AlphabetMismatch { left: Vec<String>, right: Vec<String> },

    #[error("partition covers {found} states but the automaton has {expected}")]
    PartitionDomainMismatch { expected: usize, found: usize },

    #[error("partitions over different domains ({left} vs {right})")]
    DomainMismatch { left: usize, right: usize },

    #[error("state budget of {limit} exceeded")]
    StateBudgetExceeded { limit: usize },

    #[error("automaton is not trim: state {state} is useless")]
    NotTrim { state: usize },

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("unknown transducer state `{0}`")]
    UnknownTransducerState(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("no localization index exists for k = {k}")]
    NoSuchIndex { k: usize },

    #[error("refinement did not converge after {splits} splits")]
    RefinementDiverged { splits: usize },

    #[error("invalid criterion at offset {offset}: {message}")]
    Criterion { offset: usize, message: String },

    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("{0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
