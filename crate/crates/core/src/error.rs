use thiserror::Error;

/// Every failure mode surfaced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LommelError {
    /// `nu^2 = (mu + 2k + 1)^2` for the reported `k`; the defining series is undefined.
    #[error("excluded parameter case: nu^2 = (mu + 2k + 1)^2 at k = {k}")]
    ExcludedCase { k: u32 },

    #[error("pole: {0}")]
    Pole(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no convergence: {0}")]
    NonConvergence(String),

    /// A difference-equation chain would cross a vanishing or excluded index.
    #[error("excluded index: {0}")]
    ExcludedIndex(String),

    /// Two construction routes for the same triple disagree.
    #[error("reconciliation failed: {0}")]
    Reconciliation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl LommelError {
    /// Short machine-readable tag, used in the CLI's JSON error record.
    pub fn kind(&self) -> &'static str {
        match self {
            LommelError::ExcludedCase { .. } => "ExcludedCase",
            LommelError::Pole(_) => "PoleError",
            LommelError::Domain(_) => "DomainError",
            LommelError::NonConvergence(_) => "NonConvergence",
            LommelError::ExcludedIndex(_) => "ExcludedIndex",
            LommelError::Reconciliation(_) => "ReconciliationError",
            LommelError::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, LommelError>;
