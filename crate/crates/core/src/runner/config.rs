//! Experiment configuration: resolved form, plain-text config file parsing
//! and validation.
//!
//! Config files are TOML with four sections:
//!
//! ```toml
//! [source]
//! kind = "exponential_decay"   # or "piecewise_constant" / "tabulated"
//! amplitude = 6.51
//! cutoff = 20.0
//!
//! [params]
//! alpha2 = 0.01
//! beta = 0.5
//! nu = 1.51
//! x0 = 2.0
//!
//! [grid]
//! n = 4096
//! t_total = 40.0
//! pad_factor = 1
//!
//! [sweep]
//! p = 2.0
//! deltas = [0.01, 0.05, 0.1]
//! seeds = [1, 2, 3]
//! mu_rule = "theorem2"         # "section5" or "manual:<value>"
//! output_dir = "out"
//! ```
//!
//! Unknown keys are rejected with the offending key named; semantic
//! violations surface the failed invariant of the component they belong to.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forward_synth::SourceSpec;
use crate::inversion::MuRule;
use crate::spectral_grid::TimeGrid;
use crate::transport_kernel::{Mu, TransportParams};

pub const DEFAULT_N: usize = 4096;
pub const DEFAULT_T_TOTAL: f64 = 40.0;
pub const DEFAULT_PAD_FACTOR: usize = 1;
pub const DEFAULT_MU_RULE: MuRule = MuRule::Theorem2;

pub fn default_deltas() -> Vec<f64> {
    (1..=10).map(|i| i as f64 * 0.01).collect()
}

pub fn default_seeds() -> Vec<u64> {
    (1..=20).collect()
}

/// Fully resolved experiment description.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub source: SourceSpec,
    pub params: TransportParams,
    pub grid: TimeGrid,
    pub p: f64,
    pub deltas: Vec<f64>,
    pub seeds: Vec<u64>,
    pub mu_rule: MuRule,
    pub output_dir: PathBuf,
}

impl ExperimentConfig {
    /// Cross-component validation beyond what the typed constructors already
    /// enforce: deltas in (0,1), nonempty sweep lists, positive p.
    pub fn validate(&self) -> Result<()> {
        if self.deltas.is_empty() || self.seeds.is_empty() {
            return Err(Error::InvalidConfig("deltas and seeds must be nonempty".into()));
        }
        for &d in &self.deltas {
            if !d.is_finite() || d <= 0.0 || d >= 1.0 {
                return Err(Error::DeltaOutOfRange(d));
            }
        }
        if !self.p.is_finite() || self.p <= 0.0 {
            return Err(Error::NonPositiveSmoothness(self.p));
        }
        if let MuRule::Manual(v) = self.mu_rule {
            Mu::new(v)?;
        }
        Ok(())
    }
}

/// Parse a mu rule from its config spelling.
pub fn parse_mu_rule(s: &str) -> Result<MuRule> {
    match s {
        "theorem2" => Ok(MuRule::Theorem2),
        "section5" => Ok(MuRule::Section5),
        other => {
            if let Some(v) = other.strip_prefix("manual:") {
                let value = f64::from_str(v).map_err(|_| {
                    Error::InvalidConfig(format!("manual mu value {v:?} is not a number"))
                })?;
                Mu::new(value)?;
                Ok(MuRule::Manual(value))
            } else {
                Err(Error::InvalidConfig(format!(
                    "unknown mu_rule {other:?}; expected theorem2, section5 or manual:<value>"
                )))
            }
        }
    }
}

pub fn mu_rule_to_string(rule: MuRule) -> String {
    match rule {
        MuRule::Theorem2 => "theorem2".into(),
        MuRule::Section5 => "section5".into(),
        MuRule::Manual(v) => format!("manual:{v}"),
    }
}

// ---------------------------------------------------------------------------
// raw TOML layer

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    source: SourceSpec,
    params: RawParams,
    #[serde(default)]
    grid: RawGrid,
    sweep: RawSweep,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    alpha2: f64,
    beta: f64,
    nu: f64,
    x0: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    #[serde(default = "default_n")]
    n: usize,
    #[serde(default = "default_t_total")]
    t_total: f64,
    #[serde(default = "default_pad")]
    pad_factor: usize,
}

impl Default for RawGrid {
    fn default() -> Self {
        Self { n: DEFAULT_N, t_total: DEFAULT_T_TOTAL, pad_factor: DEFAULT_PAD_FACTOR }
    }
}

fn default_n() -> usize {
    DEFAULT_N
}

fn default_t_total() -> f64 {
    DEFAULT_T_TOTAL
}

fn default_pad() -> usize {
    DEFAULT_PAD_FACTOR
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    p: f64,
    #[serde(default = "default_deltas")]
    deltas: Vec<f64>,
    #[serde(default = "default_seeds")]
    seeds: Vec<u64>,
    #[serde(default = "default_rule_str")]
    mu_rule: String,
    #[serde(default)]
    output_dir: Option<String>,
}

fn default_rule_str() -> String {
    "theorem2".into()
}

/// Parse and validate a config file's contents.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let raw: RawConfig =
        toml::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let params = TransportParams::new(raw.params.alpha2, raw.params.beta, raw.params.nu, raw.params.x0)?;
    let grid = TimeGrid::new(raw.grid.n, raw.grid.t_total, raw.grid.pad_factor)?;
    let mu_rule = parse_mu_rule(&raw.sweep.mu_rule)?;
    let cfg = ExperimentConfig {
        source: raw.source,
        params,
        grid,
        p: raw.sweep.p,
        deltas: raw.sweep.deltas,
        seeds: raw.sweep.seeds,
        mu_rule,
        output_dir: PathBuf::from(raw.sweep.output_dir.unwrap_or_else(|| "out".into())),
    };
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_config(path: &Path) -> Result<(ExperimentConfig, String)> {
    let text = std::fs::read_to_string(path)?;
    let cfg = parse_config(&text)?;
    Ok((cfg, text))
}

// ---------------------------------------------------------------------------
// manifest serialization

#[derive(Debug, Serialize)]
pub struct Manifest {
    pub preset: Option<String>,
    /// SHA-256 of the input config file, when the run came from one.
    pub config_sha256: Option<String>,
    pub params: ManifestParams,
    pub grid: ManifestGrid,
    pub sweep: ManifestSweep,
    pub source: SourceSpec,
}

#[derive(Debug, Serialize)]
pub struct ManifestParams {
    pub alpha2: f64,
    pub beta: f64,
    pub nu: f64,
    pub x0: f64,
}

#[derive(Debug, Serialize)]
pub struct ManifestGrid {
    pub n: usize,
    pub t_total: f64,
    pub pad_factor: usize,
}

#[derive(Debug, Serialize)]
pub struct ManifestSweep {
    pub p: f64,
    pub deltas: Vec<f64>,
    pub seeds: Vec<u64>,
    pub mu_rule: String,
}

impl Manifest {
    pub fn from_config(
        cfg: &ExperimentConfig,
        preset: Option<String>,
        config_sha256: Option<String>,
    ) -> Self {
        Self {
            preset,
            config_sha256,
            params: ManifestParams {
                alpha2: cfg.params.alpha2(),
                beta: cfg.params.beta(),
                nu: cfg.params.nu(),
                x0: cfg.params.x0(),
            },
            grid: ManifestGrid {
                n: cfg.grid.n(),
                t_total: cfg.grid.t_total(),
                pad_factor: cfg.grid.pad_factor(),
            },
            sweep: ManifestSweep {
                p: cfg.p,
                deltas: cfg.deltas.clone(),
                seeds: cfg.seeds.clone(),
                mu_rule: mu_rule_to_string(cfg.mu_rule),
            },
            source: cfg.source.clone(),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("manifest serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"
[source]
kind = "exponential_decay"
amplitude = 6.51
cutoff = 20.0

[params]
alpha2 = 0.01
beta = 0.5
nu = 1.51
x0 = 2.0

[grid]
n = 1024
t_total = 40.0
pad_factor = 2

[sweep]
p = 2.0
deltas = [0.01, 0.05]
seeds = [1, 2]
mu_rule = "section5"
"#;

    #[test]
    fn parses_a_complete_config() {
        let cfg = parse_config(EXAMPLE).unwrap();
        assert_eq!(cfg.grid.n(), 1024);
        assert_eq!(cfg.deltas, vec![0.01, 0.05]);
        assert_eq!(cfg.mu_rule, MuRule::Section5);
        assert_eq!(cfg.params.nu(), 1.51);
    }

    #[test]
    fn unknown_keys_are_named() {
        let bad = EXAMPLE.replace("pad_factor = 2", "pad_fctor = 2");
        let err = parse_config(&bad).unwrap_err().to_string();
        assert!(err.contains("pad_fctor"), "message was: {err}");
    }

    #[test]
    fn zero_nu_names_the_invariant() {
        let bad = EXAMPLE.replace("nu = 1.51", "nu = 0.0");
        let err = parse_config(&bad).unwrap_err().to_string();
        assert!(err.contains("nu"), "message was: {err}");
        assert!(err.contains("positive"), "message was: {err}");
    }

    #[test]
    fn out_of_range_delta_is_rejected() {
        let bad = EXAMPLE.replace("deltas = [0.01, 0.05]", "deltas = [1.5]");
        assert!(matches!(parse_config(&bad), Err(Error::DeltaOutOfRange(_))));
    }

    #[test]
    fn manual_rule_round_trips_and_validates() {
        assert_eq!(parse_mu_rule("manual:0.25").unwrap(), MuRule::Manual(0.25));
        assert!(parse_mu_rule("manual:1.25").is_err());
        assert!(parse_mu_rule("manual:x").is_err());
        assert!(parse_mu_rule("somethingelse").is_err());
        assert_eq!(mu_rule_to_string(MuRule::Manual(0.25)), "manual:0.25");
    }

    #[test]
    fn defaults_fill_missing_grid_and_sweep_fields() {
        let minimal = r#"
[source]
kind = "exponential_decay"
amplitude = 6.51
cutoff = 20.0

[params]
alpha2 = 0.01
beta = 0.5
nu = 1.51
x0 = 2.0

[sweep]
p = 2.0
"#;
        let cfg = parse_config(minimal).unwrap();
        assert_eq!(cfg.grid.n(), DEFAULT_N);
        assert_eq!(cfg.deltas.len(), 10);
        assert_eq!(cfg.seeds.len(), 20);
        assert_eq!(cfg.mu_rule, MuRule::Theorem2);
    }
}
