use thiserror::Error;

/// Errors raised by the pricing modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PricingError {
    /// An input lies outside the domain of the formula being evaluated,
    /// e.g. dividends whose present value exceeds the spot.
    #[error("domain error: {0}")]
    Domain(String),
    /// Invalid construction parameters (market data, grids, simulation setup).
    #[error("invalid configuration: {0}")]
    Config(String),
    /// A numerical routine broke down (singular pivot, non-finite value).
    #[error("numerical failure: {0}")]
    Numerical(String),
    /// An iterative solver hit its iteration cap.
    #[error("no convergence after {iterations} iterations (last update {last_update:e})")]
    Convergence { iterations: usize, last_update: f64 },
}

pub type Result<T> = std::result::Result<T, PricingError>;

pub(crate) fn domain(msg: impl Into<String>) -> PricingError {
    PricingError::Domain(msg.into())
}

pub(crate) fn config(msg: impl Into<String>) -> PricingError {
    PricingError::Config(msg.into())
}
