use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    /// `f_α` or its derivative was requested exactly at a pole.
    #[error("pole of f_alpha at t = {t}")]
    Pole { t: f64 },

    #[error("found {found} of {wanted} roots below the search ceiling {ceiling}")]
    SearchExhausted {
        found: usize,
        wanted: usize,
        ceiling: f64,
    },

    /// Numerical engine failure (ODE step collapse, eigensolver breakdown).
    #[error("engine failure: {0}")]
    Engine(String),

    /// Post-processing found output that contradicts the Sturm-Liouville structure.
    #[error("solver inconsistency: {0}")]
    SolverInconsistency(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A search that was expected to find a witness did not.
    #[error("search failure: {0}")]
    SearchFailure(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
