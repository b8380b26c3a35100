//! Experiment orchestration: presets, config files, the property-check
//! suite and file output.

pub mod checks;
pub mod config;
pub mod output;
pub mod presets;

use std::path::Path;

pub use checks::{run_checks, run_checks_with, CheckReport, PropertyCheck};
pub use config::{
    load_config, parse_config, parse_mu_rule, ExperimentConfig, Manifest, DEFAULT_MU_RULE,
    DEFAULT_N, DEFAULT_PAD_FACTOR, DEFAULT_T_TOTAL,
};
pub use output::{run_experiment, run_rate, Provenance, RunOutputs};
pub use presets::{preset_config, Overrides, Preset};

use crate::error::Result;

/// Run a preset end to end, writing all output files.
pub fn run_preset(preset: Preset, overrides: &Overrides) -> Result<RunOutputs> {
    let cfg = preset_config(preset, overrides)?;
    let provenance = Provenance { preset: Some(preset.name().to_string()), config_text: None };
    run_experiment(&cfg, &provenance)
}

/// Run from a config file, writing all output files.
pub fn run_config(path: &Path) -> Result<RunOutputs> {
    let (cfg, text) = load_config(path)?;
    let provenance = Provenance { preset: None, config_text: Some(text) };
    run_experiment(&cfg, &provenance)
}
