use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the mathematical domain of the operation.
    #[error("{name} = {value} outside domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// K(1) is infinite. Callers that need the k -> 1 limit must use the
    /// stored limit constants instead of evaluating K at the endpoint.
    #[error("K(k) diverges at k = 1")]
    DivergentK,

    /// The adaptive integrator ran out of subdivisions before reaching the
    /// requested tolerance. The best estimate and its error bound are kept
    /// so callers can decide whether the result is still usable.
    #[error("quadrature budget exhausted: estimate {value}, error bound {error_bound}")]
    BudgetExhausted { value: f64, error_bound: f64 },

    /// Root bracketing or inversion was asked for a value outside the
    /// invertible range.
    #[error("value {value} outside invertible range [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },

    /// A probability density was requested where none exists (point mass
    /// or support endpoint).
    #[error("no density at {value}: {reason}")]
    NoDensity { value: f64, reason: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;
