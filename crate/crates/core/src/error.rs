use thiserror::Error;

/// Errors raised by the analytic and simulation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of a function.
    #[error("domain error: {0}")]
    Domain(String),

    /// The gamma function was evaluated at a pole.
    #[error("gamma function pole at x = {0}")]
    Pole(f64),

    /// A series did not converge within its term budget.
    #[error("series did not converge: {0}")]
    NonConvergence(String),

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error(
        "quadrature tolerance not met: estimate {estimate:e}, error bound {error_bound:e} after {subdivisions} subdivisions"
    )]
    ToleranceNotMet {
        estimate: f64,
        error_bound: f64,
        subdivisions: usize,
    },

    /// Rates violate 0 <= R_s <= R_t.
    #[error("invalid rates: {0}")]
    InvalidRates(String),

    /// A configuration value violates its invariant.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// An asymptotic expression was requested outside its regime of validity.
    #[error("outside regime of validity: {0}")]
    Regime(String),
}

impl Error {
    /// True for failures of the numerical machinery rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonConvergence(_) | Error::ToleranceNotMet { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
