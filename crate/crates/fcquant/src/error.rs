//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotAnOddPrime(u64),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("chart mismatch: {0}")]
    ChartMismatch(String),

    #[error("not a unit of the chart ring: {0}")]
    NotAUnit(String),

    #[error("exact division failed: {0}")]
    InexactDivision(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("operator order {0} exceeds the bound p = {1}")]
    OrderOverflow(usize, u64),

    #[error("inconsistent linear system")]
    InconsistentSystem,

    #[error("principal symbol is not 1: {0}")]
    NotMonic(String),

    #[error("subprincipal symbol is not 0: {0}")]
    NonzeroSubprincipal(String),

    #[error("matrix is not in companion frame: {0}")]
    NotCompanion(String),

    #[error("matrix is not symplectic")]
    NotSymplectic,

    #[error("degenerate 2-form: {0}")]
    DegenerateForm(String),

    #[error("Wronskian is not a horizontal unit: {0}")]
    BadWronskian(String),

    #[error("cocycle entry is not horizontal: {0}")]
    NotHorizontal(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
