//! Built-in experiment presets and command-line overrides.

use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::forward_synth::{Piece, SourceSpec};
use crate::inversion::MuRule;
use crate::spectral_grid::TimeGrid;
use crate::transport_kernel::TransportParams;

use super::config::{
    default_deltas, default_seeds, ExperimentConfig, DEFAULT_MU_RULE, DEFAULT_N,
    DEFAULT_PAD_FACTOR, DEFAULT_T_TOTAL,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Exponential-decay source, alpha2 = 0.01, beta = 0.5, nu = 1.51,
    /// sensor at x0 = 2, smoothness p = 2.
    Example1,
    /// Square-wave source, alpha2 = 0.1, beta = 0.9, nu = 1, sensor at
    /// x0 = 3, smoothness p = 3.
    Example2,
}

impl Preset {
    pub fn name(&self) -> &'static str {
        match self {
            Preset::Example1 => "example1",
            Preset::Example2 => "example2",
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "example1" => Ok(Preset::Example1),
            "example2" => Ok(Preset::Example2),
            other => Err(Error::InvalidConfig(format!(
                "unknown preset {other:?}; expected example1 or example2"
            ))),
        }
    }
}

/// Optional overrides applied on top of a preset.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub p: Option<f64>,
    pub x0: Option<f64>,
    pub deltas: Option<Vec<f64>>,
    pub seeds: Option<Vec<u64>>,
    pub mu_rule: Option<MuRule>,
    pub n: Option<usize>,
    pub t_total: Option<f64>,
    pub pad_factor: Option<usize>,
    pub output_dir: Option<PathBuf>,
}

pub fn example1_source() -> SourceSpec {
    SourceSpec::ExponentialDecay { amplitude: 6.51, cutoff: 20.0 }
}

pub fn example2_source() -> SourceSpec {
    let values = [0.0, 2.0, -2.0, 1.0, -1.0, 0.5, -0.5, 0.25, -0.25];
    let pieces = values
        .iter()
        .enumerate()
        .map(|(i, &v)| Piece { start: 2.0 * i as f64, end: 2.0 * (i + 1) as f64, value: v })
        .collect();
    SourceSpec::PiecewiseConstant { pieces }
}

/// Resolve a preset plus overrides into a validated configuration.
pub fn preset_config(preset: Preset, overrides: &Overrides) -> Result<ExperimentConfig> {
    let (source, base_params, base_p) = match preset {
        Preset::Example1 => (example1_source(), (0.01, 0.5, 1.51, 2.0), 2.0),
        Preset::Example2 => (example2_source(), (0.1, 0.9, 1.0, 3.0), 3.0),
    };
    let (alpha2, beta, nu, x0) = base_params;
    let params = TransportParams::new(alpha2, beta, nu, overrides.x0.unwrap_or(x0))?;
    let grid = TimeGrid::new(
        overrides.n.unwrap_or(DEFAULT_N),
        overrides.t_total.unwrap_or(DEFAULT_T_TOTAL),
        overrides.pad_factor.unwrap_or(DEFAULT_PAD_FACTOR),
    )?;
    let cfg = ExperimentConfig {
        source,
        params,
        grid,
        p: overrides.p.unwrap_or(base_p),
        deltas: overrides.deltas.clone().unwrap_or_else(default_deltas),
        seeds: overrides.seeds.clone().unwrap_or_else(default_seeds),
        mu_rule: overrides.mu_rule.unwrap_or(DEFAULT_MU_RULE),
        output_dir: overrides.output_dir.clone().unwrap_or_else(|| PathBuf::from("out")),
    };
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_resolve_with_documented_parameters() {
        let cfg = preset_config(Preset::Example1, &Overrides::default()).unwrap();
        assert_eq!(cfg.params.alpha2(), 0.01);
        assert_eq!(cfg.params.x0(), 2.0);
        assert_eq!(cfg.p, 2.0);
        assert_eq!(cfg.deltas.len(), 10);
        assert_eq!(cfg.seeds.len(), 20);

        let cfg = preset_config(Preset::Example2, &Overrides::default()).unwrap();
        assert_eq!(cfg.params.nu(), 1.0);
        assert_eq!(cfg.p, 3.0);
    }

    #[test]
    fn overrides_apply_and_are_validated() {
        let ov = Overrides { x0: Some(10.0), p: Some(0.5), ..Default::default() };
        let cfg = preset_config(Preset::Example1, &ov).unwrap();
        assert_eq!(cfg.params.x0(), 10.0);
        assert_eq!(cfg.p, 0.5);

        let bad = Overrides { deltas: Some(vec![2.0]), ..Default::default() };
        assert!(preset_config(Preset::Example1, &bad).is_err());
        let bad = Overrides { n: Some(1000), ..Default::default() };
        assert!(preset_config(Preset::Example1, &bad).is_err());
    }

    #[test]
    fn unknown_preset_name_is_rejected() {
        assert!("example3".parse::<Preset>().is_err());
        assert_eq!("example2".parse::<Preset>().unwrap(), Preset::Example2);
    }
}
