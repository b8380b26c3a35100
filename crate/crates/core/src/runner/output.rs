//! Experiment execution and file output: error tables, plot-ready
//! reconstruction columns and the run manifest.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::error_analysis::{aggregate, estimate_rate, sweep, SweepRow};
use crate::forward_synth::{add_noise, render_source, synthesize_data};
use crate::inversion::{apply_r_mu, apply_t, choose_mu};
use crate::spectral_grid::Signal;

use super::config::{mu_rule_to_string, ExperimentConfig, Manifest};

/// Paths produced by one experiment run.
#[derive(Debug, Clone)]
pub struct RunOutputs {
    pub errors_csv: PathBuf,
    pub reconstruction_csvs: Vec<PathBuf>,
    pub manifest: PathBuf,
}

/// Provenance recorded in the manifest.
#[derive(Debug, Clone, Default)]
pub struct Provenance {
    pub preset: Option<String>,
    pub config_text: Option<String>,
}

/// Run the configured sweep and write `errors.csv`,
/// `reconstruction_<delta>.csv` for every noise level (first seed in the
/// list), and `run_manifest.toml`.
pub fn run_experiment(cfg: &ExperimentConfig, provenance: &Provenance) -> Result<RunOutputs> {
    fs::create_dir_all(&cfg.output_dir)?;

    let reports = sweep(
        &cfg.source,
        &cfg.params,
        cfg.grid,
        &cfg.deltas,
        cfg.p,
        cfg.mu_rule,
        &cfg.seeds,
    )?;
    let rows = aggregate(&reports);

    let errors_csv = cfg.output_dir.join("errors.csv");
    write_errors_csv(&errors_csv, &rows, cfg)?;

    // Reconstruction columns for the first seed of each noise level.
    let f = render_source(&cfg.source, cfg.grid)?;
    let y = synthesize_data(&f, &cfg.params)?;
    let seed = cfg.seeds[0];
    let mut reconstruction_csvs = Vec::new();
    for &delta in &cfg.deltas {
        let noisy = add_noise(&y, delta, seed)?;
        let mu = choose_mu(delta, cfg.p, cfg.mu_rule)?;
        let f_unreg = apply_t(&noisy.noisy, &cfg.params)?;
        let f_reg = apply_r_mu(&noisy.noisy, mu, &cfg.params)?;
        let path = cfg.output_dir.join(format!("reconstruction_{delta}.csv"));
        write_reconstruction_csv(&path, &f, &f_unreg, &f_reg)?;
        reconstruction_csvs.push(path);
    }

    let manifest_path = cfg.output_dir.join("run_manifest.toml");
    let config_sha256 = provenance.config_text.as_deref().map(sha256_hex);
    let manifest = Manifest::from_config(cfg, provenance.preset.clone(), config_sha256);
    fs::write(&manifest_path, manifest.to_toml())?;

    Ok(RunOutputs { errors_csv, reconstruction_csvs, manifest: manifest_path })
}

/// Run a sweep and report the fitted convergence slope together with the
/// closed-form exponent of the bound.
pub fn run_rate(cfg: &ExperimentConfig) -> Result<(f64, f64)> {
    let reports = sweep(
        &cfg.source,
        &cfg.params,
        cfg.grid,
        &cfg.deltas,
        cfg.p,
        cfg.mu_rule,
        &cfg.seeds,
    )?;
    let estimated = estimate_rate(&reports)?;
    let theoretical = crate::error_analysis::bound_rate_exponent(cfg.p);
    Ok((estimated, theoretical))
}

fn write_errors_csv(path: &Path, rows: &[SweepRow], cfg: &ExperimentConfig) -> Result<()> {
    let mut out = String::new();
    out.push_str(
        "delta,mu,err_unreg_mean,err_unreg_min,err_unreg_max,err_reg_mean,err_reg_min,err_reg_max,bound,rule,seeds\n",
    );
    let rule = mu_rule_to_string(cfg.mu_rule);
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            r.delta,
            r.mu,
            r.err_unreg_mean,
            r.err_unreg_min,
            r.err_unreg_max,
            r.err_reg_mean,
            r.err_reg_min,
            r.err_reg_max,
            r.bound,
            rule,
            r.seeds,
        ));
    }
    atomic_write(path, &out)
}

fn write_reconstruction_csv(
    path: &Path,
    f_true: &Signal,
    f_unreg: &Signal,
    f_reg: &Signal,
) -> Result<()> {
    let grid = f_true.grid();
    let mut out = String::with_capacity(grid.n() * 48);
    out.push_str("t,f_true,f_unreg,f_reg\n");
    for j in 0..grid.n() {
        out.push_str(&format!(
            "{},{},{},{}\n",
            grid.time(j),
            f_true.samples()[j],
            f_unreg.samples()[j],
            f_reg.samples()[j],
        ));
    }
    atomic_write(path, &out)
}

fn atomic_write(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(contents.as_bytes())?;
    }
    fs::rename(&tmp, path).map_err(Error::Io)
}

pub fn sha256_hex(text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
