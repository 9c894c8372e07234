use thiserror::Error;

/// Errors produced by the analysis library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count {m} outside supported range 1..={max}")]
    VarCountOutOfRange { m: u32, max: u32 },

    #[error("operation requires an even variable count, got m={0}")]
    OddVarCount(u32),

    #[error("domain violation: {0}")]
    Domain(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular over GF(2)")]
    Singular,

    #[error("function is not bent")]
    NotBentInput,

    #[error("function has algebraic degree {0} > 2")]
    NotQuadratic(u32),

    #[error("pair ({0},{1}) has even difference and no quadratic family form")]
    NotQuadraticFamily(u8, u8),

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
