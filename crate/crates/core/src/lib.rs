//! Reliability analysis of Neyman-Pearson style hypothesis testing.
//!
//! Given a test's error profile (type-I rate alpha and power) and the
//! pre-study odds that the tested hypothesis is true, this crate computes
//! the positive and negative predictive values of the test's verdicts and
//! the total probability `p_t` that a verdict is a true assertion,
//! classifies where that probability clears the minimal-reliability bar
//! of 0.5, derives profiles from concrete one-sample Gaussian designs,
//! maps reliability over parameter grids, and verifies all nominal
//! quantities with a seeded, shard-invariant Monte Carlo simulator.

pub mod error;
pub mod fixtures;
pub mod format;
pub mod metrics;
pub mod montecarlo;
pub mod normal;
pub mod rng;
pub mod sweep;
pub mod ztest;

pub use error::Error;
pub use metrics::{
    Admissibility, ErrorProfile, HypothesisPrior, PreStudyOdds, PredictiveValues, ReliabilityReport,
};
pub use montecarlo::{OutcomeTally, SimulationConfig, SimulationResult};
pub use sweep::{AxisSpec, GridSpec, PriorAxis, SweepRow, SweepSummary};
pub use ztest::{Tail, ZTestDesign};
