use thiserror::Error;

/// Errors produced by the group, character and Mackey layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("group order cap {cap} exceeded during closure")]
    OrderCapExceeded { cap: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid Cayley table: {0}")]
    InvalidCayley(String),
    #[error("action is not a homomorphism into Aut(A): {0}")]
    InvalidAction(String),
    #[error("subgroup is not normal in the ambient group")]
    NotNormal,
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("{0}")]
    Invalid(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),
    #[error("commutant splitting failed after retry budget; reseed")]
    SplittingFailure,
    #[error(
        "scalar {re}{im:+}i does not snap to a root of unity of order dividing {modulus} \
         (residual {residual:.3e})"
    )]
    SnapFailure {
        re: f64,
        im: f64,
        modulus: usize,
        residual: f64,
    },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
