use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("d3 ∘ d3 ≠ 0 at degree {0}")]
    D3NotSquareZero(usize),
    #[error("no extension candidate survives the mod-2 constraint")]
    NoSurvivor,
    #[error("inconsistent reduction/Bockstein tables: {0}")]
    InconsistentTables(String),
    #[error("cannot assert collapse: a higher differential d{r} has nonzero source and target")]
    CollapseNotForced { r: usize },
    #[error("torsion order cap exceeded ({0} > 65536)")]
    CapExceeded(u128),
    #[error("{0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
