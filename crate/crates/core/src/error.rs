use thiserror::Error;

use crate::ops::PrimitiveOp;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("bias {0} is outside [-1, 1]")]
    BiasOutOfRange(f64),

    #[error("spin index {index} out of range for a {n}-spin system")]
    SpinOutOfRange { index: usize, n: usize },

    #[error("operation {0} uses the same spin twice")]
    RepeatedSpin(PrimitiveOp),

    #[error("RESET targets spin {0}, which is not a reset spin")]
    NotResetSpin(usize),

    #[error("{op} reads spin {spin}, whose bias is stale after an earlier compression")]
    StaleRead { op: PrimitiveOp, spin: usize },

    #[error("diagonal state with {0} spins exceeds the dense-vector limit")]
    TooManySpins(usize),

    #[error("invalid algorithm: {0}")]
    InvalidAlgorithm(String),

    #[error("{0} has no gate-level schedule (closed form only)")]
    NotCompilable(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("target {target} is unreachable with at most {max_spins} spins")]
    Unreachable { target: f64, max_spins: usize },

    #[error("parse error: {0}")]
    Parse(String),
}
