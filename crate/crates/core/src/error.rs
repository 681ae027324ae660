use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or degenerate input (bad polygon, non-positive factor, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A documented precondition of an operation does not hold.
    #[error("precondition violation: {0}")]
    PreconditionViolation(String),

    /// The conformal map could not be built to the requested accuracy.
    #[error("map construction failed: {reason} (points={points}, eps_b={eps_b:.3e})")]
    ConstructionFailure {
        reason: String,
        points: usize,
        eps_b: f64,
    },

    /// Evaluation requested too close to the unit circle.
    #[error("evaluation out of range: |z| = {0} exceeds 1 - 1e-6")]
    EvaluationOutOfRange(f64),

    /// Adaptive quadrature did not reach its error target.
    #[error("quadrature did not converge: error {error:.3e} after {nodes} nodes")]
    PrecisionFailure { error: f64, nodes: usize },

    /// Taylor coefficients disagree between two sample radii.
    #[error("coefficient estimates inconsistent at n = {index}: difference {difference:.3e}, bound {bound:.3e}")]
    CoefficientPrecisionFailure {
        index: usize,
        difference: f64,
        bound: f64,
    },

    /// The output polygon of a circular symmetrization is not simple.
    #[error("approximation degraded: {0}")]
    ApproximationDegraded(String),

    /// A deformation step could not be completed.
    #[error("deformation step {step} failed: {source}")]
    StepFailure {
        step: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
