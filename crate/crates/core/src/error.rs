use thiserror::Error;

/// Errors raised by the analysis, optimization and simulation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Inputs are individually valid but inconsistent with each other
    /// (length mismatches, empty grids, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// The arguments exceed the range a kernel is validated for.
    #[error("unsupported range: {0}")]
    UnsupportedRange(String),

    /// No power profile meets the requested error probability.
    #[error("infeasible: {reason} (binding multiuser efficiency {binding_eta})")]
    Infeasible { reason: String, binding_eta: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
