use thiserror::Error;

/// Errors raised by the solver and its analysis routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HatError {
    #[error("number of players {0} is outside the supported range 2..={max}", max = crate::MAX_PLAYERS)]
    PlayerCount(usize),

    #[error("probability must lie strictly between 0 and 1, got {0}")]
    Probability(String),

    #[error("cannot parse probability {0:?}: expected a decimal literal or a/b")]
    ProbabilitySyntax(String),

    #[error("configuration code {code} does not fit {n} players")]
    ConfigCode { code: u32, n: usize },

    #[error("player index {player} is outside 1..={n}")]
    PlayerIndex { player: usize, n: usize },

    #[error("dimension mismatch: matrix is for {matrix} players, configuration for {config}")]
    DimensionMismatch { matrix: usize, config: usize },

    #[error("malformed decision matrix: {0}")]
    MatrixFormat(String),

    #[error("a set of configurations must be nonempty")]
    EmptySet,

    #[error("set elements must be distinct, sorted, and below 2^N: {0}")]
    InvalidSet(String),

    #[error("set size {das} is outside 1..={max}")]
    SetSize { das: usize, max: usize },

    #[error("no adequate set of size {das} exists for {n} players")]
    NoAdequateSet { n: usize, das: usize },

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, HatError>;
