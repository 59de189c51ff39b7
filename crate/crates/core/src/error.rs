use thiserror::Error;

/// Errors produced by the core constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("points coincide")]
    SamePoint,
    #[error("failure record is stale: the edge has no such unmet need")]
    StaleFailure,
    #[error("shape mismatch: matrix is L({m_q},{m_n}) but structure is L({s_q},{s_n})")]
    ShapeMismatch {
        m_q: u32,
        m_n: u32,
        s_q: u32,
        s_n: u32,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
