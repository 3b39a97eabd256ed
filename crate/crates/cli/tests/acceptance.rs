//! Acceptance suite: one test per criterion, each printing a PASS line
//! (visible with `cargo test --test acceptance -- --nocapture`).

use std::process::Command;
use std::time::Instant;

use testrel::metrics::{self, ErrorProfile, HypothesisPrior, PreStudyOdds};
use testrel::montecarlo::{run_simulation, SimulationConfig};
use testrel::normal::{normal_cdf, normal_quantile};
use testrel::rng::CounterRng;
use testrel::sweep::{failure_boundary, failure_boundary_bisect, BoundaryOutcome};
use testrel::ztest::{
    power_alpha_sensitivity, power_of_design, solve_sample_size, Tail, ZTestDesign,
};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_testrel"))
}

/// Deterministic admissible profiles with power > alpha + 1e-9.
fn sample_profiles(count: usize, seed: u64) -> Vec<ErrorProfile> {
    let mut rng = CounterRng::new(seed, 0);
    (0..count)
        .map(|_| {
            let alpha = 1e-6 + rng.next_open01() * (0.99 - 1e-6);
            let frac = rng.next_open01();
            let power = alpha + 1e-9 + frac * (0.999_999 - alpha - 1e-9);
            ErrorProfile::new(alpha, power).unwrap()
        })
        .collect()
}

fn sample_priors(count: usize, seed: u64) -> Vec<HypothesisPrior> {
    let mut rng = CounterRng::new(seed, 1);
    (0..count)
        .map(|_| {
            let p = 1e-6 + rng.next_open01() * (1.0 - 2e-6);
            HypothesisPrior::new(p).unwrap()
        })
        .collect()
}

#[test]
fn criterion_1_paper_value_reproduction() {
    let started = Instant::now();

    // The binary's fixture checker passes.
    let out = binary().arg("paper-check").output().expect("binary runs");
    assert_eq!(out.status.code(), Some(0), "paper-check must exit 0");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("paper-check: 6/6 fixtures passed"));

    let p_t = |a: f64, pw: f64, ph: f64| {
        metrics::p_t_direct(
            ErrorProfile::new(a, pw).unwrap(),
            HypothesisPrior::new(ph).unwrap(),
        )
        .unwrap()
    };

    // Exact mixture values.
    assert!((p_t(0.05, 0.10, 0.5) - 0.525).abs() < 1e-12);
    assert!((p_t(0.05, 0.06, 0.33) - 0.3537).abs() < 1e-12);
    assert!((p_t(0.05, 0.90, 0.6) - 0.93).abs() < 1e-12);
    // Published 0.48 at the two-decimal gate (direct evaluation: 0.477).
    assert!((p_t(0.55, 0.99, 0.95) - 0.4775).abs() <= 0.005);
    assert!((p_t(0.55, 0.99, 0.95) - 0.48).abs() <= 0.005);

    // Screening configuration.
    let profile = ErrorProfile::new(0.01, 0.02).unwrap();
    let odds = PreStudyOdds::new(0.02).unwrap();
    let ppv = metrics::ppv(profile, odds).unwrap();
    let npv = metrics::npv(profile, odds).unwrap();
    let truth = metrics::p_t_direct(profile, odds.to_prior()).unwrap();
    assert!((ppv - 0.0385).abs() < 5e-5 && (ppv - 0.04).abs() <= 0.005);
    assert!((npv - 0.9806).abs() < 5e-5 && (npv - 0.98).abs() <= 0.005);
    assert!((truth - 0.9710).abs() < 5e-5 && (truth - 0.97).abs() <= 0.005);

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    println!("[PASS] criterion 1: paper-value reproduction ({elapsed:?})");
}

#[test]
fn criterion_2_known_discrepancy_handling() {
    // The swapped configuration evaluates to 0.92, not the published 0.72.
    let recomputed = metrics::p_t_direct(
        ErrorProfile::new(0.10, 0.95).unwrap(),
        HypothesisPrior::new(0.6).unwrap(),
    )
    .unwrap();
    assert!((recomputed - 0.92).abs() < 1e-12);

    let out = binary().arg("paper-check").output().expect("binary runs");
    assert_eq!(out.status.code(), Some(0), "run still exits 0");
    let text = String::from_utf8(out.stdout).unwrap();
    let note_line = text
        .lines()
        .find(|l| l.contains("note:"))
        .expect("discrepancy note emitted");
    assert!(note_line.contains("0.72"));
    assert!(note_line.contains("0.92"));
    println!("[PASS] criterion 2: known-discrepancy handling");
}

#[test]
fn criterion_3_condition_5_at_even_odds() {
    let profiles = sample_profiles(10_000, 0xC0FFEE);
    let even = HypothesisPrior::new(0.5).unwrap();
    let mut violations = 0usize;
    for p in &profiles {
        if metrics::p_t_direct(*p, even).unwrap() <= 0.5 {
            violations += 1;
        }
    }
    assert_eq!(violations, 0, "{violations} violations of p_t > 0.5");
    println!(
        "[PASS] criterion 3: p_t > 0.5 at even odds over {} admissible profiles",
        profiles.len()
    );
}

#[test]
fn criterion_4_route_equivalence_and_swap_invariance() {
    let profiles = sample_profiles(10_000, 0xC0FFEE);
    let priors = sample_priors(10_000, 0xC0FFEE);
    let mut max_route = 0f64;
    let mut max_swap = 0f64;
    for (p, h) in profiles.iter().zip(&priors) {
        let direct = metrics::p_t_direct(*p, *h).unwrap();
        let via = metrics::p_t_via_predictive(*p, *h).unwrap();
        max_route = max_route.max((direct - via).abs());

        let (sp, sh) = metrics::swap_hypotheses(*p, *h).unwrap();
        let swapped = metrics::p_t_direct(sp, sh).unwrap();
        max_swap = max_swap.max((direct - swapped).abs());
    }
    assert!(max_route <= 1e-12, "max route gap {max_route}");
    assert!(max_swap <= 1e-12, "max swap gap {max_swap}");
    println!(
        "[PASS] criterion 4: route equivalence (max {max_route:.2e}) and swap invariance \
         (max {max_swap:.2e}) over 10000 samples"
    );
}

#[test]
fn criterion_5_boundary_correctness() {
    let profiles: Vec<ErrorProfile> = sample_profiles(4_000, 0xB0A4D)
        .into_iter()
        .filter(|p| (p.beta() - p.alpha()).abs() > 1e-9)
        .take(1_000)
        .collect();
    assert_eq!(profiles.len(), 1_000);

    let mut crossings = 0usize;
    let mut flips = 0usize;
    let mut max_gap = 0f64;
    for p in &profiles {
        let closed = failure_boundary(*p).unwrap();
        let bisected = failure_boundary_bisect(*p).unwrap();
        match (closed, bisected) {
            (BoundaryOutcome::Crossing(a), BoundaryOutcome::Crossing(b)) => {
                max_gap = max_gap.max((a - b).abs());
                crossings += 1;
                if a > 1.1e-3 && a < 1.0 - 1.1e-3 {
                    let at = |x: f64| {
                        metrics::p_t_direct(*p, HypothesisPrior::new(x).unwrap()).unwrap() > 0.5
                    };
                    let below = at(a - 1e-3);
                    let above = at(a + 1e-3);
                    assert_ne!(below, above, "no flip across p* for {p:?}");
                    assert_eq!(
                        above,
                        p.beta() > p.alpha(),
                        "flip direction wrong for {p:?}"
                    );
                    flips += 1;
                }
            }
            (BoundaryOutcome::NoCrossing, BoundaryOutcome::NoCrossing) => {}
            other => panic!("route mismatch for {p:?}: {other:?}"),
        }
    }
    assert!(max_gap <= 1e-9, "max closed-vs-bisection gap {max_gap}");
    assert!(crossings > 100, "only {crossings} crossing cases sampled");
    assert!(flips > 100, "only {flips} flip checks ran");
    println!(
        "[PASS] criterion 5: boundary closed-form vs bisection (max gap {max_gap:.2e}, \
         {crossings} crossings, {flips} flips checked)"
    );
}

#[test]
fn criterion_6_gaussian_numerics() {
    // CDF symmetry within 1e-12.
    let mut x = -20.0f64;
    while x <= 20.0 {
        let s = normal_cdf(x).unwrap() + normal_cdf(-x).unwrap();
        assert!((s - 1.0).abs() <= 1e-12, "symmetry at {x}");
        x += 0.02;
    }

    // Quantile round trip within 1e-9 across (0, 1) including hard tails.
    let mut ps = vec![1e-10, 1e-9, 1e-6, 1e-3];
    for i in 1..=999 {
        ps.push(i as f64 / 1000.0);
    }
    ps.extend([1.0 - 1e-3, 1.0 - 1e-6, 1.0 - 1e-9, 1.0 - 1e-10]);
    for &p in &ps {
        let x = normal_quantile(p).unwrap();
        assert!(
            (normal_cdf(x).unwrap() - p).abs() <= 1e-9,
            "round trip at {p}"
        );
    }

    // Sensitivity closed form vs central finite differences (h = 1e-6)
    // at 100 grid points, relative error <= 1e-4; flag equals the
    // analytic inequality everywhere.
    let mut checked = 0usize;
    for i in 0..10 {
        for j in 0..10 {
            let theta = 0.2 + 0.45 * i as f64;
            let alpha = 0.01 + 0.048 * j as f64;
            let design = ZTestDesign::new(0.0, theta, 1.0, 1, alpha, Tail::Upper).unwrap();
            let s = power_alpha_sensitivity(&design).unwrap();

            let h = 1e-6;
            let power_at = |a: f64| {
                let d = ZTestDesign::new(0.0, theta, 1.0, 1, a, Tail::Upper).unwrap();
                power_of_design(&d).power()
            };
            let fd = (power_at(alpha + h) - power_at(alpha - h)) / (2.0 * h);
            assert!(
                ((s.value - fd) / fd).abs() <= 1e-4,
                "sensitivity mismatch at theta={theta}, alpha={alpha}: {} vs {fd}",
                s.value
            );

            let z = normal_quantile(1.0 - alpha).unwrap();
            assert_eq!(s.claim_holds, z > theta / 2.0);
            checked += 1;
        }
    }
    assert_eq!(checked, 100);
    println!("[PASS] criterion 6: gaussian numerics (symmetry, round trip, sensitivity x100)");
}

#[test]
fn criterion_7_sample_size_minimality() {
    let mut rng = CounterRng::new(0x5A3D, 0);
    for case in 0..50 {
        let alpha = 0.002 + rng.next_open01() * 0.3;
        let target = (alpha + 0.02 + rng.next_open01() * (0.98 - alpha)).min(0.99);
        let delta = 0.05 + rng.next_open01() * 2.0;
        let sigma = 0.1 + rng.next_open01() * 4.0;
        let n = solve_sample_size(alpha, target, delta, sigma, Tail::Upper).unwrap();
        let power_at = |n: u64| {
            let d = ZTestDesign::new(0.0, delta, sigma, n, alpha, Tail::Upper).unwrap();
            power_of_design(&d).power()
        };
        assert!(
            power_at(n) >= target,
            "case {case}: power({n}) = {} < {target}",
            power_at(n)
        );
        if n > 1 {
            assert!(
                power_at(n - 1) < target,
                "case {case}: n not minimal, power({}) = {} >= {target}",
                n - 1,
                power_at(n - 1)
            );
        }
    }
    println!("[PASS] criterion 7: sample-size minimality over 50 random designs");
}

#[test]
fn criterion_8_monte_carlo_calibration() {
    let started = Instant::now();

    let design = ZTestDesign::new(0.0, 0.36334, 1.0, 1, 0.05, Tail::Upper).unwrap();
    let base = SimulationConfig {
        design,
        prior: HypothesisPrior::new(0.5).unwrap(),
        num_studies: 100_000,
        seed: 20_240_817,
        shards: 1,
    };
    let result = run_simulation(&base).unwrap();

    // Empirical p_t within the 3-SE band around 0.525.
    assert!(
        (result.p_t.value - 0.525).abs() <= 0.0047,
        "empirical p_t = {}",
        result.p_t.value
    );

    // Conditional outcome-table marginals within 3 SE of alpha and power.
    let tally = &result.tally;
    let alpha_hat = tally.empirical_alpha().unwrap();
    let se_alpha = (0.05f64 * 0.95 / tally.h_true_count() as f64).sqrt();
    assert!(
        (alpha_hat - 0.05).abs() <= 3.0 * se_alpha,
        "alpha_hat = {alpha_hat}"
    );
    let power = result.nominal_profile.power();
    let power_hat = tally.empirical_power().unwrap();
    let se_power = (power * (1.0 - power) / tally.h_false_count() as f64).sqrt();
    assert!(
        (power_hat - power).abs() <= 3.0 * se_power,
        "power_hat = {power_hat}"
    );

    // Seed determinism: byte-exact record on rerun.
    let again = run_simulation(&base).unwrap();
    assert_eq!(result, again);
    assert_eq!(result.to_key_value(), again.to_key_value());

    // Shard invariance.
    for shards in [2, 8] {
        let config = SimulationConfig { shards, ..base };
        let sharded = run_simulation(&config).unwrap();
        assert_eq!(sharded, result, "shards = {shards}");
    }

    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 30.0,
        "took {elapsed:?}, budget 30 s"
    );
    println!(
        "[PASS] criterion 8: Monte Carlo calibration, determinism, shard invariance ({elapsed:?})"
    );
}
