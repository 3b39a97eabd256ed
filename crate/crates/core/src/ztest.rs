//! One-sample Gaussian mean tests with known standard deviation.
//!
//! A design tests the point hypothesis `mu = mu0` against the point
//! alternative `mu = mu0 + delta` from `n` observations with known
//! population sigma. All of its error behavior is governed by the
//! noncentrality `theta = |delta| * sqrt(n) / sigma`; the module derives
//! the resulting error profile, solves for the minimal sample size that
//! reaches a target power, and quantifies how fast power is spent when
//! alpha is tightened.

use crate::error::Error;
use crate::metrics::ErrorProfile;
use crate::normal::{normal_cdf, normal_quantile};

/// Which side(s) of the tested value the rejection region occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tail {
    Upper,
    Lower,
    TwoSided,
}

/// A fully specified one-sample z-test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZTestDesign {
    mu0: f64,
    delta: f64,
    sigma: f64,
    n: u64,
    alpha: f64,
    tail: Tail,
}

impl ZTestDesign {
    /// Validates the design. `delta = 0` is rejected: a zero-separation
    /// alternative forces power equal to alpha and carries no information.
    /// One-sided tails require the alternative to lie on the tested side.
    pub fn new(
        mu0: f64,
        delta: f64,
        sigma: f64,
        n: u64,
        alpha: f64,
        tail: Tail,
    ) -> Result<Self, Error> {
        if !mu0.is_finite() {
            return Err(Error::InvalidDesign(format!(
                "mu0 must be finite, got {mu0}"
            )));
        }
        if !delta.is_finite() || delta == 0.0 {
            return Err(Error::InvalidDesign(format!(
                "delta must be finite and nonzero, got {delta}"
            )));
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidDesign(format!(
                "sigma must be positive and finite, got {sigma}"
            )));
        }
        if n == 0 {
            return Err(Error::InvalidDesign(
                "sample size must be at least 1".into(),
            ));
        }
        if !(alpha.is_finite() && alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidAlpha(alpha));
        }
        match tail {
            Tail::Upper if delta < 0.0 => {
                return Err(Error::InvalidDesign(
                    "upper-tail test requires delta > 0".into(),
                ))
            }
            Tail::Lower if delta > 0.0 => {
                return Err(Error::InvalidDesign(
                    "lower-tail test requires delta < 0".into(),
                ))
            }
            _ => {}
        }
        Ok(Self {
            mu0,
            delta,
            sigma,
            n,
            alpha,
            tail,
        })
    }

    pub fn mu0(&self) -> f64 {
        self.mu0
    }
    pub fn delta(&self) -> f64 {
        self.delta
    }
    pub fn sigma(&self) -> f64 {
        self.sigma
    }
    pub fn n(&self) -> u64 {
        self.n
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn tail(&self) -> Tail {
        self.tail
    }

    /// Noncentrality `|delta| * sqrt(n) / sigma`, always positive for a
    /// valid design.
    pub fn theta(&self) -> f64 {
        self.delta.abs() * (self.n as f64).sqrt() / self.sigma
    }

    /// Critical value for the standardized statistic: reject when
    /// z > crit (upper), z < -crit (lower), |z| > crit (two-sided).
    pub fn critical_value(&self) -> f64 {
        let q = match self.tail {
            Tail::TwoSided => 1.0 - self.alpha / 2.0,
            _ => 1.0 - self.alpha,
        };
        normal_quantile(q).expect("alpha validated at construction")
    }
}

/// Derive the nominal error profile of a design.
///
/// One-sided: `power = Phi(theta - z_{1-alpha})`. Two-sided:
/// `power = Phi(theta - z_{1-alpha/2}) + Phi(-theta - z_{1-alpha/2})`.
/// Any positive noncentrality puts power strictly above alpha, so valid
/// designs always yield admissible profiles; at very large theta the
/// computed power saturates one ulp below 1 to stay inside the open
/// interval.
pub fn power_of_design(design: &ZTestDesign) -> ErrorProfile {
    let theta = design.theta();
    let crit = design.critical_value();
    let power = match design.tail {
        Tail::Upper | Tail::Lower => phi(theta - crit),
        Tail::TwoSided => phi(theta - crit) + phi(-theta - crit),
    };
    let power = power.clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON / 2.0);
    ErrorProfile::new(design.alpha, power).expect("profile valid by construction")
}

fn phi(x: f64) -> f64 {
    normal_cdf(x).expect("finite by construction")
}

/// Smallest n whose design reaches `target_power`.
///
/// Starts from the one-sided closed form
/// `n = ceil(((z_{1-alpha} + z_{power}) * sigma / |delta|)^2)`
/// (with `z_{1-alpha/2}` in the two-sided case) and then walks to the
/// exact minimum by direct power evaluation, so the returned n always
/// satisfies `power(n) >= target > power(n-1)`.
pub fn solve_sample_size(
    alpha: f64,
    target_power: f64,
    delta: f64,
    sigma: f64,
    tail: Tail,
) -> Result<u64, Error> {
    if !(alpha.is_finite() && alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidAlpha(alpha));
    }
    if !(target_power.is_finite() && target_power > 0.0 && target_power < 1.0) {
        return Err(Error::InvalidPower(target_power));
    }
    if target_power <= alpha {
        return Err(Error::TargetPowerNotAboveAlpha {
            alpha,
            target: target_power,
        });
    }
    if !delta.is_finite() || delta == 0.0 {
        return Err(Error::InvalidDesign(format!(
            "delta must be finite and nonzero, got {delta}"
        )));
    }
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidDesign(format!(
            "sigma must be positive and finite, got {sigma}"
        )));
    }

    let z_a = match tail {
        Tail::TwoSided => normal_quantile(1.0 - alpha / 2.0)?,
        _ => normal_quantile(1.0 - alpha)?,
    };
    let z_p = normal_quantile(target_power)?;
    let guess = ((z_a + z_p) * sigma / delta.abs()).powi(2).ceil();
    let mut n = if guess >= 1.0 { guess as u64 } else { 1 };

    let power_at = |n: u64| {
        let signed = match tail {
            Tail::Lower => -delta.abs(),
            _ => delta.abs(),
        };
        let design =
            ZTestDesign::new(0.0, signed, sigma, n, alpha, tail).expect("inputs validated above");
        power_of_design(&design).power()
    };

    while power_at(n) < target_power {
        n += 1;
    }
    while n > 1 && power_at(n - 1) >= target_power {
        n -= 1;
    }
    Ok(n)
}

/// Trade-off rate between the two error integrals at a one-sided design.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sensitivity {
    /// dPower/dAlpha = exp(theta * z_{1-alpha} - theta^2 / 2).
    pub value: f64,
    /// True when `z_{1-alpha} > theta/2`, i.e. tightening alpha costs
    /// more power than it buys confidence. Equivalent to `value > 1`.
    pub claim_holds: bool,
}

/// Rate at which power responds to alpha for a one-sided design:
/// `dPower/dAlpha = pdf(z_{1-alpha} - theta) / pdf(z_{1-alpha})`,
/// which reduces to `exp(theta * z_{1-alpha} - theta^2 / 2)`.
///
/// A value above 1 means the power integral moves faster than the
/// `1 - alpha` integral; that regime ends exactly at
/// `z_{1-alpha} = theta/2`, so high-powered designs (large theta)
/// escape it. Two-sided designs are rejected.
pub fn power_alpha_sensitivity(design: &ZTestDesign) -> Result<Sensitivity, Error> {
    if design.tail == Tail::TwoSided {
        return Err(Error::TwoSidedSensitivity);
    }
    let theta = design.theta();
    let z = normal_quantile(1.0 - design.alpha)?;
    Ok(Sensitivity {
        value: (theta * z - theta * theta / 2.0).exp(),
        claim_holds: z > theta / 2.0,
    })
}
