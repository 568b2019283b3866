use thiserror::Error;

/// Errors produced by the pendulum library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("energy {energy} outside the allowed range [{lo}, {hi}]")]
    EnergyOutOfRange { energy: f64, lo: f64, hi: f64 },

    #[error("no convergence after {iterations} refinements (last change {last_change:e}, truncation {truncation})")]
    NotConverged {
        iterations: usize,
        last_change: f64,
        truncation: usize,
        /// Last iterate, so callers can still inspect what was reached.
        last: Vec<f64>,
    },

    #[error("degenerate energy denominator between levels {0} and {1}")]
    DegenerateDenominator(usize, usize),

    #[error("no root bracket: {0}")]
    NoBracket(String),
}

pub type Result<T> = std::result::Result<T, Error>;
