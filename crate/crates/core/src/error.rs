use thiserror::Error;

/// Errors raised by automaton construction, language operators and synthesis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet must contain at least one event")]
    EmptyAlphabet,

    #[error("event `{0}` is declared more than once")]
    DuplicateEvent(String),

    #[error("invalid event name {0:?}: names must be non-empty and contain no whitespace")]
    InvalidEventName(String),

    #[error("event `{0}` is not part of the alphabet")]
    UnknownEvent(String),

    #[error("event `{name}` has conflicting flags: {detail}")]
    FlagConflict { name: String, detail: String },

    #[error("operands are defined over different alphabets")]
    AlphabetMismatch,

    #[error("state {state} is out of range for an automaton with {num_states} states")]
    InvalidState { state: usize, num_states: usize },

    #[error("automaton is not deterministic")]
    NotDeterministic,

    #[error("automaton is not complete")]
    NotComplete,

    #[error("{0} is not a sublanguage of the required superset")]
    NotSubset(&'static str),

    #[error("operand must be prefix-closed")]
    NotClosed,

    #[error("iteration did not converge within {0} steps")]
    IterationCap(usize),

    #[error("enumeration cap exceeded: {size} strings, limit is {cap}")]
    SizeCap { size: usize, cap: usize },

    #[error("language has members longer than {0}")]
    NotFinite(usize),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
