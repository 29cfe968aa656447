use thiserror::Error;

/// Failure modes shared by every evaluator, scanner and auditor in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ZetaError {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("outside the domain: {0}")]
    Domain(String),

    #[error("s = 1 is a simple pole")]
    Pole,

    #[error("requested accuracy {requested:e} unattainable; best certified bound {best_bound:e}")]
    Precision { requested: f64, best_bound: f64 },

    #[error("Q is effectively infinite: |1/Q| = {inverse_magnitude:e}")]
    SingularQ { inverse_magnitude: f64 },

    #[error("refinement failed: {0}")]
    Refinement(String),

    #[error("zero on or near the contour at {re} + {im}i: {reason}")]
    Boundary { re: f64, im: f64, reason: String },

    #[error("winding sum {winding} is not close to an integer (residual {residual})")]
    Inconclusive { winding: f64, residual: f64 },

    #[error("malformed record: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, ZetaError>;

impl ZetaError {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        ZetaError::Parameter(msg.into())
    }
}
