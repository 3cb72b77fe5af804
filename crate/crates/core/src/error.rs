use thiserror::Error;

/// Errors raised by constructors and exact computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("genre is undefined for the zero operator")]
    UndefinedGenre,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error("degenerate plan: Casorati determinant vanishes at n = {n}")]
    DegeneratePlan { n: i64 },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("inexact division")]
    InexactDivision,
}

pub type Result<T> = std::result::Result<T, Error>;
