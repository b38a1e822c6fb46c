use thiserror::Error;

/// Errors raised by the special-function, solution, measure and transform layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series did not converge within {terms} terms (last term magnitude {last_term:e})")]
    SeriesFailure { terms: usize, last_term: f64 },

    #[error("argument {re} + {im}i lies on the branch cut")]
    Branch { re: f64, im: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("spectral parameter {re} + {im}i is within {dist:e} of the pole at {pole}")]
    Pole { re: f64, im: f64, pole: f64, dist: f64 },

    #[error("theta = {theta} sits on the atom boundary |theta mod pi| = |theta_kappa| for kappa = {kappa}")]
    AtomBoundary { kappa: f64, theta: f64 },

    #[error("quadrature budget exhausted: best estimate {best} with error {err:e}")]
    Accuracy { best: f64, err: f64 },

    #[error("limit extrapolation failed to converge: {0}")]
    Convergence(String),

    #[error("invalid input: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
