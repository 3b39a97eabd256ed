//! Seeded Monte Carlo verification of nominal reliability quantities.
//!
//! Each simulated study draws whether the tested hypothesis is actually
//! true at the configured prior, generates the study's observations from
//! the matching Gaussian, runs the z-test, and tallies the verdict into
//! the four-cell outcome table. Empirical predictive values and truth
//! frequency then stand against their nominal counterparts with binomial
//! standard errors.
//!
//! Every study owns stream `i` of the counter-based generator, so the
//! result is a pure function of (design, prior, num_studies, seed) and in
//! particular independent of how the study range is split across shards.

use crate::error::Error;
use crate::format::sig12;
use crate::metrics::{reliability_report, ErrorProfile, HypothesisPrior, ReliabilityReport};
use crate::rng::CounterRng;
use crate::ztest::{power_of_design, Tail, ZTestDesign};

/// Full specification of a simulation run.
#[derive(Debug, Clone, Copy)]
pub struct SimulationConfig {
    pub design: ZTestDesign,
    pub prior: HypothesisPrior,
    pub num_studies: u64,
    pub seed: u64,
    /// How many contiguous chunks the study range is split into. Purely
    /// an execution knob: results are identical for every value.
    pub shards: u32,
}

/// Verdict of a single study.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    AcceptH,
    RejectH,
}

/// The four possible outcomes of a test, tallied over all studies.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OutcomeTally {
    /// H true, H accepted (correct).
    pub accept_h_true: u64,
    /// H false, H accepted (type-II error materialized).
    pub accept_h_false: u64,
    /// H true, H rejected (type-I error materialized).
    pub reject_h_true: u64,
    /// H false, H rejected (correct).
    pub reject_h_false: u64,
}

impl OutcomeTally {
    pub fn total(&self) -> u64 {
        self.accept_h_true + self.accept_h_false + self.reject_h_true + self.reject_h_false
    }

    /// Studies in which H was actually true.
    pub fn h_true_count(&self) -> u64 {
        self.accept_h_true + self.reject_h_true
    }

    /// Studies in which H was actually false.
    pub fn h_false_count(&self) -> u64 {
        self.accept_h_false + self.reject_h_false
    }

    /// Observed type-I error rate among H-true studies.
    pub fn empirical_alpha(&self) -> Option<f64> {
        let n = self.h_true_count();
        (n > 0).then(|| self.reject_h_true as f64 / n as f64)
    }

    /// Observed rejection rate among H-false studies.
    pub fn empirical_power(&self) -> Option<f64> {
        let n = self.h_false_count();
        (n > 0).then(|| self.reject_h_false as f64 / n as f64)
    }

    fn merge(&mut self, other: &OutcomeTally) {
        self.accept_h_true += other.accept_h_true;
        self.accept_h_false += other.accept_h_false;
        self.reject_h_true += other.reject_h_true;
        self.reject_h_false += other.reject_h_false;
    }
}

/// An empirical frequency with its nominal comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    /// Number of trials behind the frequency.
    pub denominator: u64,
    /// Binomial standard error at the nominal probability,
    /// `sqrt(p (1-p) / denominator)`.
    pub std_error: f64,
    /// `(value - nominal) / std_error`.
    pub z_score: f64,
}

fn estimate(successes: u64, denominator: u64, nominal: f64) -> Option<Estimate> {
    if denominator == 0 {
        return None;
    }
    let value = successes as f64 / denominator as f64;
    let std_error = (nominal * (1.0 - nominal) / denominator as f64).sqrt();
    Some(Estimate {
        value,
        denominator,
        std_error,
        z_score: (value - nominal) / std_error,
    })
}

/// Outcome of a simulation run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationResult {
    pub tally: OutcomeTally,
    /// Empirical truth frequency `(accept_h_true + reject_h_false) / n`.
    pub p_t: Estimate,
    /// Empirical PPV `reject_h_false / (reject_h_false + reject_h_true)`;
    /// `None` (undefined, not zero) when no study rejected H.
    pub ppv: Option<Estimate>,
    /// Empirical NPV `accept_h_true / (accept_h_true + accept_h_false)`;
    /// `None` when no study accepted H.
    pub npv: Option<Estimate>,
    /// Nominal profile derived from the design.
    pub nominal_profile: ErrorProfile,
    /// Nominal reliability quantities the empirical ones are scored against.
    pub nominal: ReliabilityReport,
}

/// Run one study: generate its observations and test them.
///
/// Observations come from `Normal(mu0, sigma)` when `truth` holds and
/// from `Normal(mu0 + delta, sigma)` otherwise; the standardized mean
/// is compared against the design's critical region. Consumes exactly
/// `n` counter positions of `rng`.
pub fn simulate_study(design: &ZTestDesign, truth: bool, rng: &mut CounterRng) -> Verdict {
    let mu = if truth {
        design.mu0()
    } else {
        design.mu0() + design.delta()
    };
    let n = design.n();
    let mut sum = 0.0;
    for _ in 0..n {
        sum += mu + design.sigma() * rng.next_standard_normal();
    }
    let mean = sum / n as f64;
    let z = (mean - design.mu0()) * (n as f64).sqrt() / design.sigma();
    let crit = design.critical_value();
    let reject = match design.tail() {
        Tail::Upper => z > crit,
        Tail::Lower => z < -crit,
        Tail::TwoSided => z.abs() > crit,
    };
    if reject {
        Verdict::RejectH
    } else {
        Verdict::AcceptH
    }
}

fn tally_range(config: &SimulationConfig, start: u64, end: u64) -> OutcomeTally {
    let mut tally = OutcomeTally::default();
    let p_h = config.prior.value();
    for study in start..end {
        let mut rng = CounterRng::new(config.seed, study);
        let truth = rng.next_open01() < p_h;
        let verdict = simulate_study(&config.design, truth, &mut rng);
        match (verdict, truth) {
            (Verdict::AcceptH, true) => tally.accept_h_true += 1,
            (Verdict::AcceptH, false) => tally.accept_h_false += 1,
            (Verdict::RejectH, true) => tally.reject_h_true += 1,
            (Verdict::RejectH, false) => tally.reject_h_false += 1,
        }
    }
    tally
}

/// Simulate `num_studies` independent studies and score the empirical
/// reliability quantities against their nominal values.
pub fn run_simulation(config: &SimulationConfig) -> Result<SimulationResult, Error> {
    if config.num_studies == 0 {
        return Err(Error::InvalidSimulation(
            "num_studies must be at least 1".into(),
        ));
    }
    if config.shards == 0 {
        return Err(Error::InvalidSimulation("shards must be at least 1".into()));
    }

    let nominal_profile = power_of_design(&config.design);
    let nominal = reliability_report(nominal_profile, config.prior)?;

    let n = config.num_studies;
    let shards = (config.shards as u64).min(n);
    let mut tally = OutcomeTally::default();
    if shards == 1 {
        tally = tally_range(config, 0, n);
    } else {
        let partials = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..shards)
                .map(|k| {
                    let start = n * k / shards;
                    let end = n * (k + 1) / shards;
                    scope.spawn(move || tally_range(config, start, end))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("shard worker panicked"))
                .collect::<Vec<_>>()
        });
        for partial in &partials {
            tally.merge(partial);
        }
    }

    let correct = tally.accept_h_true + tally.reject_h_false;
    let rejections = tally.reject_h_true + tally.reject_h_false;
    let acceptances = tally.accept_h_true + tally.accept_h_false;
    Ok(SimulationResult {
        tally,
        p_t: estimate(correct, n, nominal.p_t).expect("num_studies > 0"),
        ppv: estimate(tally.reject_h_false, rejections, nominal.predictive.ppv),
        npv: estimate(tally.accept_h_true, acceptances, nominal.predictive.npv),
        nominal_profile,
        nominal,
    })
}

impl SimulationResult {
    fn fields(&self) -> Vec<(&'static str, String)> {
        let mut out: Vec<(&'static str, String)> = vec![
            ("studies", self.tally.total().to_string()),
            ("accept_h_true", self.tally.accept_h_true.to_string()),
            ("accept_h_false", self.tally.accept_h_false.to_string()),
            ("reject_h_true", self.tally.reject_h_true.to_string()),
            ("reject_h_false", self.tally.reject_h_false.to_string()),
            ("nominal_alpha", sig12(self.nominal_profile.alpha())),
            ("nominal_power", sig12(self.nominal_profile.power())),
            ("nominal_p_t", sig12(self.nominal.p_t)),
            ("nominal_ppv", sig12(self.nominal.predictive.ppv)),
            ("nominal_npv", sig12(self.nominal.predictive.npv)),
            (
                "nominal_meets_minimal",
                self.nominal.meets_minimal.to_string(),
            ),
            (
                "nominal_boundary_prior",
                self.nominal
                    .boundary_prior
                    .map(sig12)
                    .unwrap_or_else(|| "none".to_string()),
            ),
        ];
        let opt = |est: &Option<Estimate>,
                   out: &mut Vec<(&'static str, String)>,
                   keys: [&'static str; 4]| {
            match est {
                Some(e) => {
                    out.push((keys[0], sig12(e.value)));
                    out.push((keys[1], e.denominator.to_string()));
                    out.push((keys[2], sig12(e.std_error)));
                    out.push((keys[3], sig12(e.z_score)));
                }
                None => {
                    out.push((keys[0], "undefined".to_string()));
                    out.push((keys[1], "0".to_string()));
                    out.push((keys[2], "undefined".to_string()));
                    out.push((keys[3], "undefined".to_string()));
                }
            }
        };
        out.push(("empirical_p_t", sig12(self.p_t.value)));
        out.push(("p_t_denominator", self.p_t.denominator.to_string()));
        out.push(("p_t_std_error", sig12(self.p_t.std_error)));
        out.push(("p_t_z_score", sig12(self.p_t.z_score)));
        opt(
            &self.ppv,
            &mut out,
            [
                "empirical_ppv",
                "ppv_denominator",
                "ppv_std_error",
                "ppv_z_score",
            ],
        );
        opt(
            &self.npv,
            &mut out,
            [
                "empirical_npv",
                "npv_denominator",
                "npv_std_error",
                "npv_z_score",
            ],
        );
        out
    }

    /// Flat `key=value` record, one field per line.
    pub fn to_key_value(&self) -> String {
        let mut s = String::new();
        for (k, v) in self.fields() {
            s.push_str(k);
            s.push('=');
            s.push_str(&v);
            s.push('\n');
        }
        s
    }

    /// Header and row of a one-record CSV.
    pub fn to_csv(&self) -> (String, String) {
        let fields = self.fields();
        let header = fields.iter().map(|(k, _)| *k).collect::<Vec<_>>().join(",");
        let row = fields
            .iter()
            .map(|(_, v)| v.clone())
            .collect::<Vec<_>>()
            .join(",");
        (header, row)
    }
}
