use thiserror::Error;

use crate::complex::{CellId, ValidationReport};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("complex failed validation:\n{0}")]
    Validation(ValidationReport),

    #[error("cell {0} is not alive in the current subcomplex")]
    NotAlive(CellId),

    #[error("cell {0} does not exist")]
    UnknownCell(CellId),

    #[error("{x} is not a codimension-one coface of {y}")]
    NotCodimOne { x: CellId, y: CellId },

    /// Successive codifferentials of a cochain complex did not compose to zero.
    /// For the complexes built here this means the cell set was not locally
    /// closed, which cannot happen on a valid regular complex.
    #[error("codifferentials compose to a nonzero map out of degree {degree}")]
    NonzeroComposition { degree: usize },

    #[error("frontier relation contains a cycle through stratum {0}")]
    FrontierCycle(usize),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
