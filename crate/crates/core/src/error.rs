use thiserror::Error;

/// Errors raised while building or analysing a game instance.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("a game needs at least 2 agents, got {0}")]
    TooFewAgents(usize),

    #[error("agent index {index} out of range for {n} agents")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("action profile has length {got}, expected {expected}")]
    ProfileLength { got: usize, expected: usize },

    #[error("invalid action profile `{0}`")]
    InvalidProfile(String),

    #[error("invalid rational number `{0}`")]
    InvalidRational(String),

    #[error("cannot build a step function from an empty threshold set")]
    EmptyThresholds,

    #[error("instance with {n} agents exceeds the exhaustive-search limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("solution record does not belong to this population")]
    RecordMismatch,

    #[error("record admits {count} equilibria, more than {limit}; pass an explicit limit")]
    EnumerationTooLarge { count: String, limit: u64 },

    #[error("expected a pure anti-coordination CCDF over {expected} agents, got denominator {got}")]
    NotPureAnti { expected: usize, got: usize },

    #[error("alpha must lie in [0, 1], got {0}")]
    AlphaOutOfRange(f64),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("step-function distributions are discontinuous; use the finite solver instead")]
    DiscontinuousDistribution,

    #[error("step limit must be at least 1")]
    ZeroStepLimit,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
