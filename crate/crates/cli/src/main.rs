//! Command-line front end: every subcommand is a thin adapter over the
//! library, printing the library's values at 12 significant digits.
//!
//! Exit codes: 0 success, 1 internal or fixture failure, 2 usage or
//! validation error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use testrel::fixtures;
use testrel::format::sig12;
use testrel::metrics::{self, ErrorProfile, HypothesisPrior, PreStudyOdds};
use testrel::montecarlo::{run_simulation, SimulationConfig};
use testrel::sweep::{run_sweep, write_csv, AxisSpec, GridSpec, PriorAxis};
use testrel::ztest::{
    power_alpha_sensitivity, power_of_design, solve_sample_size, Tail, ZTestDesign,
};

#[derive(Parser)]
#[command(
    name = "testrel",
    version,
    about = "Reliability analysis of hypothesis tests: predictive values, truth probability, \
             Gaussian test designs, grid sweeps, and seeded Monte Carlo verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reliability metrics for one (alpha, power, prior) configuration
    Metrics(MetricsArgs),
    /// Error profile of a one-sample Gaussian mean test design
    Power(PowerArgs),
    /// Smallest sample size whose design reaches a target power
    Samplesize(SamplesizeArgs),
    /// Reliability over an (alpha, power, prior) grid, written as CSV
    Sweep(SweepArgs),
    /// Simulate iterated studies with a seeded deterministic generator
    Simulate(SimulateArgs),
    /// Check built-in fixtures against their published values
    PaperCheck,
}

#[derive(Args)]
struct PriorFlags {
    /// Pre-study probability of the tested hypothesis, in (0, 1)
    #[arg(long = "p-h", value_name = "P", group = "prior")]
    p_h: Option<f64>,
    /// Pre-study odds of a true alternative, positive; P(H) = 1/(r+1)
    #[arg(long, value_name = "R", group = "prior")]
    r: Option<f64>,
}

impl PriorFlags {
    fn resolve(&self) -> Result<HypothesisPrior, CliError> {
        match (self.p_h, self.r) {
            (Some(p), None) => Ok(HypothesisPrior::new(p)?),
            (None, Some(r)) => Ok(PreStudyOdds::new(r)?.to_prior()),
            _ => Err(CliError::Validation(
                "exactly one of --p-h or --r is required".into(),
            )),
        }
    }
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("prior").required(true)))]
struct MetricsArgs {
    /// Type-I error probability alpha, in (0, 1)
    #[arg(long)]
    alpha: f64,
    /// Power against the point alternative, in (0, 1); must exceed alpha
    #[arg(long)]
    power: f64,
    #[command(flatten)]
    prior: PriorFlags,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TailArg {
    Upper,
    Lower,
    TwoSided,
}

impl From<TailArg> for Tail {
    fn from(t: TailArg) -> Tail {
        match t {
            TailArg::Upper => Tail::Upper,
            TailArg::Lower => Tail::Lower,
            TailArg::TwoSided => Tail::TwoSided,
        }
    }
}

#[derive(Args)]
struct DesignFlags {
    /// Tested mean value (measurement units; default 0)
    #[arg(long, default_value_t = 0.0)]
    mu0: f64,
    /// Point alternative offset, nonzero, same units as mu0
    #[arg(long)]
    delta: f64,
    /// Known population standard deviation, positive, same units
    #[arg(long)]
    sigma: f64,
    /// Sample size, at least 1
    #[arg(long)]
    n: u64,
    /// Type-I error probability alpha, in (0, 1)
    #[arg(long)]
    alpha: f64,
    /// Rejection region side; upper requires delta > 0, lower delta < 0
    #[arg(long, value_enum)]
    tail: TailArg,
}

impl DesignFlags {
    fn resolve(&self) -> Result<ZTestDesign, CliError> {
        Ok(ZTestDesign::new(
            self.mu0,
            self.delta,
            self.sigma,
            self.n,
            self.alpha,
            self.tail.into(),
        )?)
    }
}

#[derive(Args)]
struct PowerArgs {
    #[command(flatten)]
    design: DesignFlags,
    /// Also report dPower/dAlpha and whether tightening alpha costs more
    /// power than it buys (one-sided designs only)
    #[arg(long)]
    sensitivity: bool,
}

#[derive(Args)]
struct SamplesizeArgs {
    /// Type-I error probability alpha, in (0, 1)
    #[arg(long)]
    alpha: f64,
    /// Power the design must reach, in (alpha, 1)
    #[arg(long = "target-power")]
    target_power: f64,
    /// Point alternative offset, nonzero
    #[arg(long)]
    delta: f64,
    /// Known population standard deviation, positive
    #[arg(long)]
    sigma: f64,
    /// Rejection region side
    #[arg(long, value_enum)]
    tail: TailArg,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("prior").required(true)))]
struct SweepArgs {
    /// Alpha axis as START:STOP:STEP (all in (0,1)), or a single value
    #[arg(long, value_parser = parse_range)]
    alpha: RangeArg,
    /// Power axis as START:STOP:STEP (all in (0,1)), or a single value
    #[arg(long, value_parser = parse_range)]
    power: RangeArg,
    /// Prior axis as START:STOP:STEP (all in (0,1)), or a single value
    #[arg(long = "p-h", value_parser = parse_range, group = "prior")]
    p_h: Option<RangeArg>,
    /// Odds axis as START:STOP:STEP (all positive), or a single value
    #[arg(long, value_parser = parse_range, group = "prior")]
    r: Option<RangeArg>,
    /// Output CSV path
    #[arg(long)]
    out: PathBuf,
    /// Overwrite an existing output file
    #[arg(long)]
    force: bool,
    /// Evaluate biased and coincident cells instead of filtering them
    #[arg(long = "include-inadmissible")]
    include_inadmissible: bool,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("prior").required(true)))]
struct SimulateArgs {
    #[command(flatten)]
    design: DesignFlags,
    #[command(flatten)]
    prior: PriorFlags,
    /// Number of simulated studies, at least 1
    #[arg(long)]
    studies: u64,
    /// Seed for the deterministic counter-based generator
    #[arg(long)]
    seed: u64,
    /// Number of chunks the study range is split into; never affects
    /// the result
    #[arg(long, default_value_t = 1)]
    shards: u32,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Csv,
}

#[derive(Clone, Copy, Debug)]
struct RangeArg {
    start: f64,
    stop: f64,
    step: f64,
}

fn parse_range(s: &str) -> Result<RangeArg, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |t: &str| -> Result<f64, String> {
        t.trim()
            .parse::<f64>()
            .map_err(|_| format!("`{t}` is not a number"))
    };
    match parts.as_slice() {
        [single] => {
            let v = num(single)?;
            Ok(RangeArg {
                start: v,
                stop: v,
                step: 1.0,
            })
        }
        [start, stop, step] => Ok(RangeArg {
            start: num(start)?,
            stop: num(stop)?,
            step: num(step)?,
        }),
        _ => Err("expected START:STOP:STEP or a single value".into()),
    }
}

impl RangeArg {
    fn axis(&self) -> Result<AxisSpec, CliError> {
        Ok(AxisSpec::new(self.start, self.stop, self.step)?)
    }
}

enum CliError {
    Validation(String),
    Internal(String),
}

impl From<testrel::Error> for CliError {
    fn from(e: testrel::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Metrics(args) => cmd_metrics(args),
        Command::Power(args) => cmd_power(args),
        Command::Samplesize(args) => cmd_samplesize(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::PaperCheck => cmd_paper_check(),
    }
}

fn print_kv(key: &str, value: String) {
    println!("{key}={value}");
}

fn cmd_metrics(args: MetricsArgs) -> Result<ExitCode, CliError> {
    let profile = ErrorProfile::new(args.alpha, args.power)?;
    let prior = args.prior.resolve()?;
    let report = metrics::reliability_report(profile, prior)?;

    print_kv("alpha", sig12(profile.alpha()));
    print_kv("power", sig12(profile.power()));
    print_kv("beta", sig12(profile.beta()));
    print_kv("admissibility", profile.classify().to_string());
    print_kv("p_h", sig12(prior.value()));
    print_kv("r", sig12(prior.to_odds().value()));
    print_kv("ppv", sig12(report.predictive.ppv));
    print_kv("npv", sig12(report.predictive.npv));
    print_kv("p_t", sig12(report.p_t));
    print_kv("meets_minimal", report.meets_minimal.to_string());
    print_kv(
        "boundary_prior",
        report
            .boundary_prior
            .map(sig12)
            .unwrap_or_else(|| "none".into()),
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_power(args: PowerArgs) -> Result<ExitCode, CliError> {
    let design = args.design.resolve()?;
    let profile = power_of_design(&design);
    print_kv("theta", sig12(design.theta()));
    print_kv("alpha", sig12(profile.alpha()));
    print_kv("power", sig12(profile.power()));
    print_kv("beta", sig12(profile.beta()));
    print_kv("admissibility", profile.classify().to_string());
    if args.sensitivity {
        let s = power_alpha_sensitivity(&design)?;
        print_kv("dpower_dalpha", sig12(s.value));
        print_kv("alpha_tightening_costs_power", s.claim_holds.to_string());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_samplesize(args: SamplesizeArgs) -> Result<ExitCode, CliError> {
    let n = solve_sample_size(
        args.alpha,
        args.target_power,
        args.delta,
        args.sigma,
        args.tail.into(),
    )?;
    let signed_delta = match args.tail {
        TailArg::Lower => -args.delta.abs(),
        _ => args.delta,
    };
    let design = ZTestDesign::new(
        0.0,
        signed_delta,
        args.sigma,
        n,
        args.alpha,
        args.tail.into(),
    )?;
    print_kv("n", n.to_string());
    print_kv("achieved_power", sig12(power_of_design(&design).power()));
    print_kv("target_power", sig12(args.target_power));
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode, CliError> {
    let prior_axis = match (args.p_h, args.r) {
        (Some(p), None) => PriorAxis::Prior(p.axis()?),
        (None, Some(r)) => PriorAxis::Odds(r.axis()?),
        _ => {
            return Err(CliError::Validation(
                "exactly one of --p-h or --r is required".into(),
            ))
        }
    };
    let mut spec = GridSpec::new(args.alpha.axis()?, args.power.axis()?, prior_axis);
    spec.admissibility_filter = !args.include_inadmissible;

    let (rows, summary) = run_sweep(&spec)?;

    if args.out.exists() && !args.force {
        return Err(CliError::Validation(format!(
            "{} exists; pass --force to overwrite",
            args.out.display()
        )));
    }
    let file = fs::File::create(&args.out)
        .map_err(|e| CliError::Internal(format!("cannot create {}: {e}", args.out.display())))?;
    let mut writer = std::io::BufWriter::new(file);
    write_csv(&rows, &summary, &mut writer)
        .and_then(|()| writer.flush())
        .map_err(|e| CliError::Internal(format!("cannot write {}: {e}", args.out.display())))?;

    println!(
        "wrote {} rows to {} (total={} filtered={})",
        summary.emitted,
        args.out.display(),
        summary.total_cells,
        summary.filtered
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_simulate(args: SimulateArgs) -> Result<ExitCode, CliError> {
    let config = SimulationConfig {
        design: args.design.resolve()?,
        prior: args.prior.resolve()?,
        num_studies: args.studies,
        seed: args.seed,
        shards: args.shards,
    };
    let result = run_simulation(&config)?;
    match args.format {
        OutputFormat::Text => print!("{}", result.to_key_value()),
        OutputFormat::Csv => {
            let (header, row) = result.to_csv();
            println!("{header}");
            println!("{row}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_paper_check() -> Result<ExitCode, CliError> {
    let results = fixtures::evaluate_builtin();
    for result in &results {
        for line in result.lines() {
            println!("{line}");
        }
    }
    let passed = results.iter().filter(|r| r.passed).count();
    println!("paper-check: {passed}/{} fixtures passed", results.len());
    if fixtures::all_passed(&results) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}
