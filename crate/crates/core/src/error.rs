//! Error type shared across the crate.

use crate::metrics::Admissibility;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("alpha must lie strictly inside (0, 1), got {0}")]
    InvalidAlpha(f64),

    #[error("power must lie strictly inside (0, 1), got {0}")]
    InvalidPower(f64),

    #[error("prior probability must lie strictly inside (0, 1), got {0}")]
    InvalidPrior(f64),

    #[error("probability must lie strictly inside (0, 1), got {0}")]
    InvalidProbability(f64),

    #[error("argument must be finite, got {0}")]
    NonFiniteArgument(f64),

    #[error("pre-study odds must be positive and finite, got {0}")]
    InvalidOdds(f64),

    /// Reliability metrics are defined only for admissible profiles
    /// (power strictly above alpha).
    #[error("profile is {0}: reliability metrics require power > alpha")]
    NotAdmissible(Admissibility),

    #[error("invalid test design: {0}")]
    InvalidDesign(String),

    #[error("sample size target power {target} must exceed alpha {alpha}")]
    TargetPowerNotAboveAlpha { alpha: f64, target: f64 },

    #[error("sensitivity is defined for one-sided designs only")]
    TwoSidedSensitivity,

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid simulation config: {0}")]
    InvalidSimulation(String),
}
