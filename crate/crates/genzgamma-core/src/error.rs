use thiserror::Error;

/// Errors produced by evaluators, certifiers and the scan engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested tail tolerance cannot be met within the term cap.
    #[error(
        "series budget exhausted: requested tail {requested:.3e}, best achievable {achieved:.3e} after {terms} terms"
    )]
    BudgetExceeded {
        requested: f64,
        achieved: f64,
        terms: usize,
    },

    /// The two evaluation routes of a dual-form check disagree beyond
    /// their combined error bounds.
    #[error(
        "dual-form disagreement in {context}: direct {direct:.17e} vs collapsed {collapsed:.17e} exceeds tolerance {tolerance:.3e}"
    )]
    InconsistentForms {
        context: &'static str,
        direct: f64,
        collapsed: f64,
        tolerance: f64,
    },

    /// The displayed-chain route and the monotone-witness route of a
    /// chain verification disagree beyond round-off and tail bounds.
    #[error("chain route disagreement: {0}")]
    InconsistentRoutes(String),

    /// A scan grid is malformed or exceeds the point cap.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
