//! Reliability maps over (alpha, power, prior) grids and the location of
//! the minimal-reliability failure boundary.
//!
//! Grids are plain step grids rather than random designs: rows come out
//! in a fixed lexicographic order (alpha outermost, then power, then the
//! prior axis), the cell count is exact, and two runs of the same spec
//! are byte-identical. Cells that fail the unbiasedness screen are
//! skipped by default and accounted for in the summary so the exclusion
//! stays auditable.

use std::io::{self, Write};

use crate::error::Error;
use crate::format::sig12;
use crate::metrics::{self, raw, Admissibility, ErrorProfile};

/// One grid axis: `start`, `start + step`, ... up to `stop`.
///
/// `stop` itself is included exactly when `stop - start` is an integer
/// multiple of `step` (within 1e-9 relative); `start == stop` denotes a
/// single-point axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisSpec {
    start: f64,
    stop: f64,
    step: f64,
}

impl AxisSpec {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self, Error> {
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err(Error::InvalidGrid("axis bounds must be finite".into()));
        }
        if start > stop {
            return Err(Error::InvalidGrid(format!(
                "axis start {start} exceeds stop {stop}"
            )));
        }
        if step <= 0.0 {
            return Err(Error::InvalidGrid(format!(
                "axis step must be positive, got {step}"
            )));
        }
        Ok(Self { start, stop, step })
    }

    /// A single-point axis.
    pub fn single(value: f64) -> Result<Self, Error> {
        Self::new(value, value, 1.0)
    }

    pub fn count(&self) -> usize {
        if self.start == self.stop {
            return 1;
        }
        let span = (self.stop - self.start) / self.step;
        let rounded = span.round();
        if (span - rounded).abs() <= 1e-9 * span.max(1.0) {
            rounded as usize + 1
        } else {
            span.floor() as usize + 1
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.count())
            .map(|i| self.start + i as f64 * self.step)
            .collect()
    }
}

/// Third grid axis: either the prior P(H) or the pre-study odds R.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PriorAxis {
    Prior(AxisSpec),
    Odds(AxisSpec),
}

/// Full grid specification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub alpha: AxisSpec,
    pub power: AxisSpec,
    pub prior: PriorAxis,
    /// Skip biased and coincident cells (default). With the filter off,
    /// inadmissible cells are evaluated anyway so exploratory sweeps can
    /// show what such configurations would yield.
    pub admissibility_filter: bool,
}

impl GridSpec {
    pub fn new(alpha: AxisSpec, power: AxisSpec, prior: PriorAxis) -> Self {
        Self {
            alpha,
            power,
            prior,
            admissibility_filter: true,
        }
    }
}

/// One evaluated grid cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub alpha: f64,
    pub power: f64,
    pub p_h: f64,
    pub r: f64,
    pub ppv: f64,
    pub npv: f64,
    pub p_t: f64,
    pub meets_minimal: bool,
}

/// Cell accounting for a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepSummary {
    pub total_cells: u64,
    pub emitted: u64,
    pub filtered: u64,
}

fn unit_interval_points(axis: &AxisSpec, name: &str) -> Result<Vec<f64>, Error> {
    let points = axis.points();
    for &p in &points {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidGrid(format!(
                "{name} axis point {p} lies outside (0, 1)"
            )));
        }
    }
    Ok(points)
}

/// Evaluate the grid in lexicographic order (alpha, power, prior).
pub fn run_sweep(spec: &GridSpec) -> Result<(Vec<SweepRow>, SweepSummary), Error> {
    let alphas = unit_interval_points(&spec.alpha, "alpha")?;
    let powers = unit_interval_points(&spec.power, "power")?;
    let (priors, odds): (Vec<f64>, Vec<f64>) = match spec.prior {
        PriorAxis::Prior(axis) => {
            let ps = unit_interval_points(&axis, "p_h")?;
            let rs = ps.iter().map(|p| (1.0 - p) / p).collect();
            (ps, rs)
        }
        PriorAxis::Odds(axis) => {
            let rs = axis.points();
            for &r in &rs {
                if !(r.is_finite() && r > 0.0) {
                    return Err(Error::InvalidGrid(format!(
                        "odds axis point {r} must be positive"
                    )));
                }
            }
            let ps = rs.iter().map(|r| 1.0 / (r + 1.0)).collect();
            (ps, rs)
        }
    };

    let total = (alphas.len() * powers.len() * priors.len()) as u64;
    let mut rows = Vec::new();
    let mut filtered = 0u64;
    for &alpha in &alphas {
        for &power in &powers {
            let admissible = ErrorProfile::new(alpha, power)
                .map(|p| p.classify() == Admissibility::Admissible)
                .unwrap_or(false);
            if spec.admissibility_filter && !admissible {
                filtered += priors.len() as u64;
                continue;
            }
            for (&p_h, &r) in priors.iter().zip(&odds) {
                let p_t = raw::p_t(alpha, power, p_h);
                rows.push(SweepRow {
                    alpha,
                    power,
                    p_h,
                    r,
                    ppv: raw::ppv(alpha, power, r),
                    npv: raw::npv(alpha, power, r),
                    p_t,
                    meets_minimal: p_t > 0.5,
                });
            }
        }
    }
    let summary = SweepSummary {
        total_cells: total,
        emitted: rows.len() as u64,
        filtered,
    };
    Ok((rows, summary))
}

/// CSV header for [`write_csv`].
pub const CSV_HEADER: &str = "alpha,power,p_h,r,ppv,npv,p_t,meets_minimal";

/// Write rows as CSV (floats at 12 significant digits, booleans as
/// true/false) followed by a `#summary` trailer comment.
pub fn write_csv<W: Write>(
    rows: &[SweepRow],
    summary: &SweepSummary,
    mut out: W,
) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            sig12(row.alpha),
            sig12(row.power),
            sig12(row.p_h),
            sig12(row.r),
            sig12(row.ppv),
            sig12(row.npv),
            sig12(row.p_t),
            row.meets_minimal
        )?;
    }
    writeln!(
        out,
        "#summary total={} emitted={} filtered={}",
        summary.total_cells, summary.emitted, summary.filtered
    )
}

/// Where the minimal-reliability verdict changes for a fixed profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryOutcome {
    /// `p_t` crosses 0.5 at this prior; the verdict flips across it, with
    /// direction given by the sign of `beta - alpha`.
    Crossing(f64),
    /// `p_t` stays on one side of 0.5 for every prior in (0, 1).
    NoCrossing,
    /// `alpha == beta` within tolerance: `p_t` does not depend on the
    /// prior at all; its constant value is reported.
    Degenerate { p_t: f64 },
}

/// Closed-form failure boundary `p* = (beta - 0.5)/(beta - alpha)`.
pub fn failure_boundary(profile: ErrorProfile) -> Result<BoundaryOutcome, Error> {
    match profile.classify() {
        Admissibility::Admissible => {}
        other => return Err(Error::NotAdmissible(other)),
    }
    let alpha = profile.alpha();
    let beta = profile.beta();
    if (beta - alpha).abs() <= metrics::COINCIDENT_TOLERANCE {
        // p_t = 1 - alpha independently of the prior.
        return Ok(BoundaryOutcome::Degenerate { p_t: 1.0 - alpha });
    }
    let p = raw::boundary_prior(alpha, profile.power());
    let outcome = if p > 0.0 && p < 1.0 {
        BoundaryOutcome::Crossing(p)
    } else {
        BoundaryOutcome::NoCrossing
    };
    debug_assert!(
        cross_validate(profile, outcome),
        "closed form disagrees with bisection for {profile:?}"
    );
    Ok(outcome)
}

// Referenced by the debug_assert above; only evaluated in debug builds.
fn cross_validate(profile: ErrorProfile, outcome: BoundaryOutcome) -> bool {
    match (outcome, failure_boundary_bisect(profile)) {
        (BoundaryOutcome::Crossing(a), Ok(BoundaryOutcome::Crossing(b))) => (a - b).abs() <= 1e-9,
        (BoundaryOutcome::NoCrossing, Ok(BoundaryOutcome::NoCrossing)) => true,
        _ => false,
    }
}

/// Bisection tolerance for [`failure_boundary_bisect`].
pub const BISECTION_TOLERANCE: f64 = 1e-10;

/// Locate the failure boundary numerically, bisecting `p_t(p) - 0.5`
/// over (0, 1) to within [`BISECTION_TOLERANCE`]. Serves as the
/// independent cross-check of the closed form in [`failure_boundary`].
pub fn failure_boundary_bisect(profile: ErrorProfile) -> Result<BoundaryOutcome, Error> {
    match profile.classify() {
        Admissibility::Admissible => {}
        other => return Err(Error::NotAdmissible(other)),
    }
    let alpha = profile.alpha();
    let power = profile.power();
    if (profile.beta() - alpha).abs() <= metrics::COINCIDENT_TOLERANCE {
        return Ok(BoundaryOutcome::Degenerate { p_t: 1.0 - alpha });
    }
    let f = |p: f64| raw::p_t(alpha, power, p) - 0.5;
    // Endpoint limits: p_t -> power as p -> 0, p_t -> 1 - alpha as p -> 1.
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let f_lo = power - 0.5;
    let f_hi = 0.5 - alpha;
    if f_lo == 0.0 || f_hi == 0.0 || (f_lo > 0.0) == (f_hi > 0.0) {
        return Ok(BoundaryOutcome::NoCrossing);
    }
    while hi - lo > BISECTION_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(BoundaryOutcome::Crossing(mid));
        }
        if (fm > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(BoundaryOutcome::Crossing(0.5 * (lo + hi)))
}
