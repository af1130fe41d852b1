use thiserror::Error;

/// Errors produced by the analysis routines.
///
/// Variants fall into four groups which the command-line front end maps to
/// distinct exit codes: malformed text input, semantic/range violations,
/// exhausted search budgets, and internal invariant violations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("period exponent {n} outside the supported range 0..={max}")]
    ExponentOutOfRange { n: u32, max: u32 },

    #[error("period mismatch: 2^{left} vs 2^{right}")]
    PeriodMismatch { left: u32, right: u32 },

    #[error("position {position} outside period 2^{n}")]
    PositionOutOfRange { position: usize, n: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid edge exponents {edges:?} for period 2^{n}: {reason}")]
    InvalidEdges { n: u32, edges: Vec<u32>, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("search budget exceeded: {required} error patterns needed ({reason})")]
    BudgetExceeded { required: u128, reason: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
