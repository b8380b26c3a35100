use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use srcid::runner::{
    self, parse_mu_rule, run_checks, run_config, run_preset, run_rate, Overrides, Preset,
};
use srcid::{Error, MuRule};

const EXIT_CONFIG: u8 = 2;
const EXIT_CHECK_FAILED: u8 = 3;

#[derive(Parser)]
#[command(name = "srcid", version, about = "Source identification for a 1-D advection-diffusion-reaction equation from noisy point measurements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment from a preset or a config file and write CSV output
    Run(RunArgs),
    /// Run the numeric property-check suite for the closed-form bounds
    Check,
    /// Estimate the convergence rate of the regularized error in the noise level
    Rate(RateArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Built-in experiment: example1 or example2
    #[arg(long, conflicts_with = "config")]
    preset: Option<String>,
    /// TOML config file describing the experiment
    #[arg(long)]
    config: Option<PathBuf>,
    /// Smoothness exponent of the a-priori source bound
    #[arg(long)]
    p: Option<f64>,
    /// Sensor location
    #[arg(long)]
    x0: Option<f64>,
    /// Comma-separated noise levels, each in (0, 1)
    #[arg(long, value_delimiter = ',')]
    deltas: Option<Vec<f64>>,
    /// Comma-separated seeds, or a range like 1..20 (inclusive)
    #[arg(long)]
    seeds: Option<String>,
    /// Parameter choice rule: theorem2, section5 or manual:<value>
    #[arg(long)]
    mu_rule: Option<String>,
    /// Number of time samples (power of two)
    #[arg(long)]
    n: Option<usize>,
    /// Length of the time window
    #[arg(long)]
    t_total: Option<f64>,
    /// Zero-padding factor for the transform
    #[arg(long)]
    pad: Option<usize>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RateArgs {
    /// Built-in experiment: example1 or example2
    #[arg(long)]
    preset: String,
    /// Comma-separated noise levels spanning at least two decades
    #[arg(long, value_delimiter = ',')]
    deltas: Vec<f64>,
    /// Comma-separated seeds, or a range like 1..20 (inclusive)
    #[arg(long)]
    seeds: Option<String>,
    /// Parameter choice rule (defaults to section5, whose error decays with delta)
    #[arg(long)]
    mu_rule: Option<String>,
}

fn parse_seeds(s: &str) -> Result<Vec<u64>, Error> {
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: u64 = lo
            .trim()
            .parse()
            .map_err(|_| Error::InvalidConfig(format!("bad seed range start {lo:?}")))?;
        let hi: u64 = hi
            .trim()
            .parse()
            .map_err(|_| Error::InvalidConfig(format!("bad seed range end {hi:?}")))?;
        if hi < lo {
            return Err(Error::InvalidConfig(format!("empty seed range {s:?}")));
        }
        return Ok((lo..=hi).collect());
    }
    s.split(',')
        .map(|part| {
            part.trim()
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("bad seed {part:?}")))
        })
        .collect()
}

fn overrides_from_args(args: &RunArgs) -> Result<Overrides, Error> {
    Ok(Overrides {
        p: args.p,
        x0: args.x0,
        deltas: args.deltas.clone(),
        seeds: args.seeds.as_deref().map(parse_seeds).transpose()?,
        mu_rule: args.mu_rule.as_deref().map(parse_mu_rule).transpose()?,
        n: args.n,
        t_total: args.t_total,
        pad_factor: args.pad,
        output_dir: args.out.clone(),
    })
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::Io(_) | Error::OracleNotConverged { .. } | Error::NonRealReconstruction { .. } => 1,
        _ => EXIT_CONFIG,
    }
}

fn cmd_run(args: &RunArgs) -> Result<(), Error> {
    let outputs = match (&args.preset, &args.config) {
        (Some(name), None) => {
            let preset: Preset = name.parse()?;
            run_preset(preset, &overrides_from_args(args)?)?
        }
        (None, Some(path)) => {
            let has_override = args.p.is_some()
                || args.x0.is_some()
                || args.deltas.is_some()
                || args.seeds.is_some()
                || args.mu_rule.is_some()
                || args.n.is_some()
                || args.t_total.is_some()
                || args.pad.is_some()
                || args.out.is_some();
            if has_override {
                return Err(Error::InvalidConfig(
                    "override flags apply to --preset runs only; edit the config file instead"
                        .into(),
                ));
            }
            run_config(path)?
        }
        _ => {
            return Err(Error::InvalidConfig(
                "exactly one of --preset or --config is required".into(),
            ))
        }
    };
    println!("wrote {}", outputs.errors_csv.display());
    for path in &outputs.reconstruction_csvs {
        println!("wrote {}", path.display());
    }
    println!("wrote {}", outputs.manifest.display());
    Ok(())
}

fn cmd_check() -> u8 {
    let report = run_checks();
    for check in &report.checks {
        let status = if check.passed { "pass" } else { "FAIL" };
        println!("{status}  {:<28} worst margin {:+.3e}", check.name, check.margin);
    }
    if report.all_passed() {
        println!("all {} checks passed", report.checks.len());
        0
    } else {
        let failed = report.checks.iter().filter(|c| !c.passed).count();
        eprintln!("{failed} check(s) failed");
        EXIT_CHECK_FAILED
    }
}

fn cmd_rate(args: &RateArgs) -> Result<(), Error> {
    let preset: Preset = args.preset.parse()?;
    let mu_rule = match &args.mu_rule {
        Some(s) => parse_mu_rule(s)?,
        None => MuRule::Section5,
    };
    let overrides = Overrides {
        deltas: Some(args.deltas.clone()),
        seeds: args.seeds.as_deref().map(parse_seeds).transpose()?,
        mu_rule: Some(mu_rule),
        ..Default::default()
    };
    let cfg = runner::preset_config(preset, &overrides)?;
    let (estimated, theoretical) = run_rate(&cfg)?;
    println!("estimated rate exponent:   {estimated:.4}");
    println!("theoretical rate exponent: {theoretical:.4}  (min{{p, 2}} / (p + 2), p = {})", cfg.p);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Check => return ExitCode::from(cmd_check()),
        Command::Rate(args) => cmd_rate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_for(&err))
        }
    }
}
