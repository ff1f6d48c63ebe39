use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A caller-supplied parameter violates an operation precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The brute-force log-gas sum would exceed the configured work budget.
    #[error("work budget exceeded: estimated {estimate} elementary products, budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },

    /// A computed object failed one of its structural identities.
    #[error("consistency check failed: {0}")]
    Consistency(String),

    /// An arithmetic result that must be exact was not (indicates a bug).
    #[error("internal arithmetic error: {0}")]
    Internal(String),

    #[error("did not converge: {0}")]
    Convergence(String),

    #[error("quadrature did not converge: achieved error estimate {estimate:e}")]
    Quadrature { estimate: f64 },

    /// Evaluation point lies on (or within the guard distance of) a cut or outside the domain.
    #[error("evaluation outside domain: {0}")]
    Domain(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
