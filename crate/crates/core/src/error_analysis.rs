//! Reconstruction errors, the closed-form error bound, sweep batches and
//! empirical convergence rates.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forward_synth::{add_noise, render_source, synthesize_data, SourceSpec};
use crate::inversion::{apply_r_mu, apply_t, choose_mu, MuRule};
use crate::spectral_grid::{hp_norm, l2_norm, TimeGrid};
use crate::transport_kernel::{lemma4_constant, TransportParams};

/// One row of an error table: reconstruction errors and the theoretical
/// bound for a single noise realization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    pub delta: f64,
    pub err_unregularized: f64,
    pub err_regularized: f64,
    pub mu_used: f64,
    pub bound: f64,
    pub seed: u64,
    pub rule: MuRule,
}

/// Per-delta aggregation of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub delta: f64,
    pub mu: f64,
    pub err_unreg_mean: f64,
    pub err_unreg_min: f64,
    pub err_unreg_max: f64,
    pub err_reg_mean: f64,
    pub err_reg_min: f64,
    pub err_reg_max: f64,
    pub bound: f64,
    pub seeds: usize,
}

/// `K * max{delta^(p/(p+2)), delta^(2/(p+2))}` with
/// `K = C + (2 nu + 1) max{1, 1/(m x0)}`, the stability constant of the
/// stabilized multiplier added to the a-priori source bound.
pub fn theoretical_bound(delta: f64, p: f64, c: f64, params: &TransportParams) -> Result<f64> {
    if !delta.is_finite() || delta <= 0.0 || delta >= 1.0 {
        return Err(Error::DeltaOutOfRange(delta));
    }
    if !p.is_finite() || p <= 0.0 {
        return Err(Error::NonPositiveSmoothness(p));
    }
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::InvalidParams(format!("source norm bound C = {c} must be positive")));
    }
    let k = c + lemma4_constant(params);
    let rate = delta.powf(p / (p + 2.0)).max(delta.powf(2.0 / (p + 2.0)));
    Ok(k * rate)
}

/// Full single-realization pipeline: render the source, synthesize data,
/// perturb, invert both ways, and assemble the report. Deterministic given
/// the seed. The bound constant C is the discrete Hp norm of the rendered
/// source unless `c_override` is given.
#[allow(clippy::too_many_arguments)]
pub fn run_single(
    spec: &SourceSpec,
    params: &TransportParams,
    grid: TimeGrid,
    delta: f64,
    p: f64,
    rule: MuRule,
    seed: u64,
    c_override: Option<f64>,
) -> Result<ErrorReport> {
    let f = render_source(spec, grid)?;
    let y = synthesize_data(&f, params)?;
    let sample = add_noise(&y, delta, seed)?;
    let mu = choose_mu(delta, p, rule)?;

    let f_unreg = apply_t(&sample.noisy, params)?;
    let f_reg = apply_r_mu(&sample.noisy, mu, params)?;

    let c = match c_override {
        Some(c) => c,
        None => hp_norm(&f, p)?,
    };
    Ok(ErrorReport {
        delta,
        err_unregularized: l2_norm(&f.sub(&f_unreg)?),
        err_regularized: l2_norm(&f.sub(&f_reg)?),
        mu_used: mu.value(),
        bound: theoretical_bound(delta, p, c, params)?,
        seed,
        rule,
    })
}

/// Cartesian product of deltas and seeds, each through [`run_single`].
/// Reports come back ordered by (delta, seed).
pub fn sweep(
    spec: &SourceSpec,
    params: &TransportParams,
    grid: TimeGrid,
    deltas: &[f64],
    p: f64,
    rule: MuRule,
    seeds: &[u64],
) -> Result<Vec<ErrorReport>> {
    if deltas.is_empty() || seeds.is_empty() {
        return Err(Error::InvalidConfig("deltas and seeds must be nonempty".into()));
    }
    // The rendered source and clean data are identical across runs; computing
    // them once keeps the sweep cheap.
    let f = render_source(spec, grid)?;
    let y = synthesize_data(&f, params)?;
    let points: Vec<(f64, u64)> = deltas
        .iter()
        .flat_map(|&d| seeds.iter().map(move |&s| (d, s)))
        .collect();
    points
        .par_iter()
        .map(|&(delta, seed)| {
            let sample = add_noise(&y, delta, seed)?;
            let mu = choose_mu(delta, p, rule)?;
            let f_unreg = apply_t(&sample.noisy, params)?;
            let f_reg = apply_r_mu(&sample.noisy, mu, params)?;
            let c = hp_norm(&f, p)?;
            Ok(ErrorReport {
                delta,
                err_unregularized: l2_norm(&f.sub(&f_unreg)?),
                err_regularized: l2_norm(&f.sub(&f_reg)?),
                mu_used: mu.value(),
                bound: theoretical_bound(delta, p, c, params)?,
                seed,
                rule,
            })
        })
        .collect()
}

/// Collapse a sweep into one row per delta (mean, min, max over seeds).
pub fn aggregate(reports: &[ErrorReport]) -> Vec<SweepRow> {
    let mut deltas: Vec<f64> = Vec::new();
    for r in reports {
        if !deltas.iter().any(|&d| d == r.delta) {
            deltas.push(r.delta);
        }
    }
    deltas.sort_by(|a, b| a.partial_cmp(b).unwrap());
    deltas
        .iter()
        .map(|&delta| {
            let group: Vec<&ErrorReport> = reports.iter().filter(|r| r.delta == delta).collect();
            let n = group.len() as f64;
            let stat = |f: &dyn Fn(&ErrorReport) -> f64| {
                let mut mean = 0.0;
                let mut min = f64::INFINITY;
                let mut max = f64::NEG_INFINITY;
                for r in &group {
                    let v = f(r);
                    mean += v;
                    min = min.min(v);
                    max = max.max(v);
                }
                (mean / n, min, max)
            };
            let (unreg_mean, unreg_min, unreg_max) = stat(&|r| r.err_unregularized);
            let (reg_mean, reg_min, reg_max) = stat(&|r| r.err_regularized);
            SweepRow {
                delta,
                mu: group[0].mu_used,
                err_unreg_mean: unreg_mean,
                err_unreg_min: unreg_min,
                err_unreg_max: unreg_max,
                err_reg_mean: reg_mean,
                err_reg_min: reg_min,
                err_reg_max: reg_max,
                bound: group[0].bound,
                seeds: group.len(),
            }
        })
        .collect()
}

/// Least-squares slope of `log(mean regularized error)` against `log(delta)`.
///
/// Requires at least 4 distinct noise levels spanning at least two decades.
pub fn estimate_rate(reports: &[ErrorReport]) -> Result<f64> {
    let rows = aggregate(reports);
    if rows.len() < 4 {
        return Err(Error::InsufficientSpan(format!(
            "need >= 4 distinct noise levels, got {}",
            rows.len()
        )));
    }
    let span = rows.last().unwrap().delta / rows.first().unwrap().delta;
    if span < 100.0 {
        return Err(Error::InsufficientSpan(format!(
            "noise levels span a factor of {span:.3}, need >= 100 (two decades)"
        )));
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.delta.ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.err_reg_mean.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}

/// Exponent of the bound's leading power: `min{p, 2} / (p + 2)`.
pub fn bound_rate_exponent(p: f64) -> f64 {
    p.min(2.0) / (p + 2.0)
}
