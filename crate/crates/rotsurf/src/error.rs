use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid input to a numerical kernel (non-finite argument, modulus out of range, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Input is structurally valid but the requested value does not exist
    /// (divergent integral, singular integration path, ...).
    #[error("range error: {0}")]
    Range(String),

    /// Two ambient points live in different basis conventions.
    #[error("frame mismatch: {0}")]
    FrameMismatch(String),

    /// The integration constant C lies outside the admissible set for the spec.
    #[error("infeasible C = {c}: admissible set is {feasible}")]
    Infeasible { c: f64, feasible: String },

    /// The requested profile has no real solution.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// A root finder found no sign change on its bracket.
    #[error("no root: {0}")]
    NoRoot(String),

    /// Degenerate first fundamental form / frame at a sample point.
    #[error("degenerate: {0}")]
    Degenerate(String),

    /// Immersion evaluated at a point where its chart breaks down.
    #[error("singular point: {0}")]
    Singular(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
