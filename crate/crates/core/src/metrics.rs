//! Reliability metrics for a test procedure with known error probabilities.
//!
//! Everything here is a pure function of an error profile (alpha, power)
//! and a pre-study prior (or equivalently pre-study odds). The central
//! quantity is `p_t`, the total probability that a single application of
//! the procedure ends in a true assertion, computable by two algebraically
//! identical routes: directly as the prior-weighted mixture of the two
//! correct-verdict probabilities, or through the marginal acceptance
//! probabilities and the predictive values. A procedure is "minimally
//! reliable" at a given prior when `p_t > 0.5`, i.e. it beats a coin flip.

use std::fmt;

use crate::error::Error;

/// Absolute tolerance used to classify `power == alpha` profiles.
pub const COINCIDENT_TOLERANCE: f64 = 1e-12;

/// A test's nominal type-I error probability and power.
///
/// `beta` (the type-II error probability) is always the derived quantity
/// `1 - power`. Both stored fields are confined to the open unit interval;
/// boundary values are rejected at construction since every downstream
/// formula degenerates there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorProfile {
    alpha: f64,
    power: f64,
}

impl ErrorProfile {
    pub fn new(alpha: f64, power: f64) -> Result<Self, Error> {
        if !(alpha.is_finite() && alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidAlpha(alpha));
        }
        if !(power.is_finite() && power > 0.0 && power < 1.0) {
            return Err(Error::InvalidPower(power));
        }
        Ok(Self { alpha, power })
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn power(&self) -> f64 {
        self.power
    }

    /// Type-II error probability, `1 - power`.
    #[inline]
    pub fn beta(&self) -> f64 {
        1.0 - self.power
    }

    /// Classify the profile against the unbiasedness requirement.
    ///
    /// `Biased` when power < alpha, `Coincident` when they agree within
    /// [`COINCIDENT_TOLERANCE`] (a zero-separation test carries no
    /// information and is excluded from reliability evaluation), and
    /// `Admissible` otherwise. Exactly one tag applies.
    pub fn classify(&self) -> Admissibility {
        let margin = self.power - self.alpha;
        if margin.abs() <= COINCIDENT_TOLERANCE {
            Admissibility::Coincident
        } else if margin < 0.0 {
            Admissibility::Biased
        } else {
            Admissibility::Admissible
        }
    }

    fn require_admissible(&self) -> Result<(), Error> {
        match self.classify() {
            Admissibility::Admissible => Ok(()),
            other => Err(Error::NotAdmissible(other)),
        }
    }
}

/// Where a profile stands relative to the unbiasedness requirement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Admissibility {
    /// power < alpha: the test favors false acceptance.
    Biased,
    /// power == alpha within tolerance: zero-separation, uninformative.
    Coincident,
    /// power > alpha.
    Admissible,
}

impl fmt::Display for Admissibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Admissibility::Biased => write!(f, "biased"),
            Admissibility::Coincident => write!(f, "coincident"),
            Admissibility::Admissible => write!(f, "admissible"),
        }
    }
}

/// Pre-study odds R: the ratio of true alternatives to false alternatives
/// in the reference class, so that `P(H^C) = r/(r+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PreStudyOdds {
    r: f64,
}

impl PreStudyOdds {
    pub fn new(r: f64) -> Result<Self, Error> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidOdds(r));
        }
        Ok(Self { r })
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.r
    }

    /// Pre-study probability of the tested hypothesis, `P(H) = 1/(r+1)`.
    pub fn to_prior(&self) -> HypothesisPrior {
        HypothesisPrior {
            p_h: 1.0 / (self.r + 1.0),
        }
    }
}

/// Pre-study probability that the tested hypothesis H is true.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypothesisPrior {
    p_h: f64,
}

impl HypothesisPrior {
    pub fn new(p_h: f64) -> Result<Self, Error> {
        if !(p_h.is_finite() && p_h > 0.0 && p_h < 1.0) {
            return Err(Error::InvalidPrior(p_h));
        }
        Ok(Self { p_h })
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.p_h
    }

    /// Pre-study odds `r = (1 - p_h)/p_h`, the inverse of
    /// [`PreStudyOdds::to_prior`].
    pub fn to_odds(&self) -> PreStudyOdds {
        PreStudyOdds {
            r: (1.0 - self.p_h) / self.p_h,
        }
    }
}

/// Positive and negative predictive values of a testing configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PredictiveValues {
    /// Probability the alternative is true given it was accepted.
    pub ppv: f64,
    /// Probability the tested hypothesis is true given it was accepted.
    pub npv: f64,
}

/// Complete reliability assessment of a profile at a prior.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReliabilityReport {
    /// Total probability that the verdict is a true assertion.
    pub p_t: f64,
    /// Whether `p_t > 0.5` (the procedure beats a random guess).
    pub meets_minimal: bool,
    /// The prior at which `p_t` crosses 0.5 for this profile, when one
    /// exists inside (0, 1). `p_t` is linear in the prior with slope
    /// `beta - alpha`, so the verdict flips exactly once across this value.
    pub boundary_prior: Option<f64>,
    pub predictive: PredictiveValues,
}

// Raw formula layer, shared by the checked operations below and by the
// sweep module when inadmissible cells are explicitly requested. No
// admissibility gate; inputs are only assumed to be inside their domains.
pub(crate) mod raw {
    /// Largest f64 strictly below 1; extreme configurations saturate to
    /// this instead of leaving the open interval.
    #[inline]
    pub(crate) fn open_unit(x: f64) -> f64 {
        x.clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON / 2.0)
    }

    #[inline]
    pub(crate) fn ppv(alpha: f64, power: f64, r: f64) -> f64 {
        open_unit(power * r / (power * r + alpha))
    }

    #[inline]
    pub(crate) fn npv(alpha: f64, power: f64, r: f64) -> f64 {
        let beta = 1.0 - power;
        open_unit((1.0 - alpha) / ((1.0 - alpha) + beta * r))
    }

    #[inline]
    pub(crate) fn p_t(alpha: f64, power: f64, p_h: f64) -> f64 {
        open_unit((1.0 - alpha) * p_h + power * (1.0 - p_h))
    }

    /// Prior at which p_t = 0.5: `(beta - 0.5)/(beta - alpha)`, from
    /// inverting the linear mixture. Only meaningful when alpha != beta.
    #[inline]
    pub(crate) fn boundary_prior(alpha: f64, power: f64) -> f64 {
        let beta = 1.0 - power;
        (beta - 0.5) / (beta - alpha)
    }
}

/// Positive predictive value `power*r / (power*r + alpha)`.
pub fn ppv(profile: ErrorProfile, odds: PreStudyOdds) -> Result<f64, Error> {
    profile.require_admissible()?;
    Ok(raw::ppv(profile.alpha, profile.power, odds.r))
}

/// Negative predictive value `(1-alpha) / ((1-alpha) + beta*r)`.
pub fn npv(profile: ErrorProfile, odds: PreStudyOdds) -> Result<f64, Error> {
    profile.require_admissible()?;
    Ok(raw::npv(profile.alpha, profile.power, odds.r))
}

/// Marginal probabilities of the two possible verdicts:
/// `(P(accept H), P(accept H^C))`. They sum to 1 within 1e-12.
pub fn p_accept(profile: ErrorProfile, prior: HypothesisPrior) -> Result<(f64, f64), Error> {
    profile.require_admissible()?;
    let p = prior.p_h;
    let accept_h = (1.0 - profile.alpha) * p + profile.beta() * (1.0 - p);
    let accept_hc = profile.alpha * p + profile.power * (1.0 - p);
    Ok((accept_h, accept_hc))
}

/// Total truth probability as the prior-weighted mixture of the two
/// correct-verdict probabilities: `(1-alpha)*p_h + power*(1-p_h)`.
pub fn p_t_direct(profile: ErrorProfile, prior: HypothesisPrior) -> Result<f64, Error> {
    profile.require_admissible()?;
    Ok(raw::p_t(profile.alpha, profile.power, prior.p_h))
}

/// Total truth probability through the predictive-value decomposition:
/// `P(accept H)*NPV + P(accept H^C)*PPV`.
///
/// Algebraically identical to [`p_t_direct`]; the two routes agree within
/// 1e-12 and the pair serves as a built-in cross-check.
pub fn p_t_via_predictive(profile: ErrorProfile, prior: HypothesisPrior) -> Result<f64, Error> {
    let odds = prior.to_odds();
    let (accept_h, accept_hc) = p_accept(profile, prior)?;
    let value = accept_h * npv(profile, odds)? + accept_hc * ppv(profile, odds)?;
    Ok(raw::open_unit(value))
}

/// Closed-form prior at which `p_t` crosses 0.5, when it lies in (0, 1).
///
/// Returns `None` when alpha == beta within [`COINCIDENT_TOLERANCE`]
/// (`p_t` is then constant in the prior) or when the crossing falls
/// outside the open unit interval.
pub fn boundary_prior(profile: ErrorProfile) -> Option<f64> {
    let beta = profile.beta();
    if (beta - profile.alpha).abs() <= COINCIDENT_TOLERANCE {
        return None;
    }
    let p = raw::boundary_prior(profile.alpha, profile.power);
    (p > 0.0 && p < 1.0).then_some(p)
}

/// Assemble the full reliability assessment for a profile at a prior.
///
/// `p_t` is computed by both routes and cross-checked in debug builds.
pub fn reliability_report(
    profile: ErrorProfile,
    prior: HypothesisPrior,
) -> Result<ReliabilityReport, Error> {
    let p_t = p_t_direct(profile, prior)?;
    debug_assert!(
        (p_t - p_t_via_predictive(profile, prior).unwrap()).abs() <= 1e-12,
        "p_t route disagreement for {profile:?} at {prior:?}"
    );
    let odds = prior.to_odds();
    Ok(ReliabilityReport {
        p_t,
        meets_minimal: p_t > 0.5,
        boundary_prior: boundary_prior(profile),
        predictive: PredictiveValues {
            ppv: ppv(profile, odds)?,
            npv: npv(profile, odds)?,
        },
    })
}

/// Redefine the alternative as the hypothesis under test.
///
/// The roles of the two error probabilities exchange (`alpha' = beta`,
/// `power' = 1 - alpha`) and the prior complements. The swap preserves
/// admissibility (the power margin is unchanged) and leaves `p_t`
/// exactly invariant, since the mixture terms merely trade places.
pub fn swap_hypotheses(
    profile: ErrorProfile,
    prior: HypothesisPrior,
) -> Result<(ErrorProfile, HypothesisPrior), Error> {
    profile.require_admissible()?;
    let swapped = ErrorProfile::new(profile.beta(), 1.0 - profile.alpha)?;
    let swapped_prior = HypothesisPrior::new(1.0 - prior.p_h)?;
    Ok((swapped, swapped_prior))
}
