//! End-to-end acceptance suite. Each numbered criterion prints exactly one
//! PASS/FAIL line; all failures are collected and reported together at the
//! end so a single red criterion does not hide the status of the others.

use std::time::Instant;

use srcid::runner::{preset_config, run_checks, run_preset, Overrides, Preset};
use srcid::*;

type Outcome = std::result::Result<String, String>;

struct Gate {
    failures: Vec<String>,
}

impl Gate {
    fn new() -> Self {
        Self { failures: Vec::new() }
    }

    fn record(&mut self, number: u32, name: &str, outcome: Outcome) {
        match outcome {
            Ok(detail) => println!("PASS  criterion {number} ({name}): {detail}"),
            Err(detail) => {
                println!("FAIL  criterion {number} ({name}): {detail}");
                self.failures.push(format!("criterion {number} ({name}): {detail}"));
            }
        }
    }
}

fn ex1() -> srcid::runner::ExperimentConfig {
    preset_config(Preset::Example1, &Overrides::default()).unwrap()
}

fn ex2() -> srcid::runner::ExperimentConfig {
    preset_config(Preset::Example2, &Overrides::default()).unwrap()
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let report = run_checks();
    let elapsed = start.elapsed();
    let worst = report
        .checks
        .iter()
        .map(|c| c.margin)
        .fold(f64::INFINITY, f64::min);
    if !report.all_passed() {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        return Err(format!("property checks failed: {failed:?}"));
    }
    if elapsed.as_secs_f64() >= 30.0 {
        return Err(format!("suite took {elapsed:.2?}, limit 30 s"));
    }
    Ok(format!(
        "all {} checks passed in {elapsed:.2?}, worst margin {worst:+.3e}",
        report.checks.len()
    ))
}

fn criterion2() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for cfg in [ex1(), ex2()] {
        let f = render_source(&cfg.source, cfg.grid).map_err(|e| e.to_string())?;
        let y = synthesize_data(&f, &cfg.params).map_err(|e| e.to_string())?;
        let back = apply_t(&y, &cfg.params).map_err(|e| e.to_string())?;
        let rel = l2_norm(&f.sub(&back).unwrap()) / l2_norm(&f);
        worst = worst.max(rel);
    }
    let elapsed = start.elapsed();
    if worst >= 1e-10 {
        return Err(format!("worst round-trip relative error {worst:e}, limit 1e-10"));
    }
    if elapsed.as_secs_f64() >= 1.0 {
        return Err(format!("round trips took {elapsed:.2?}, limit 1 s"));
    }
    Ok(format!("worst round-trip relative error {worst:e} in {elapsed:.2?}"))
}

fn criterion3() -> Outcome {
    let start = Instant::now();
    let cfg = ex1();
    let f = render_source(&cfg.source, cfg.grid).map_err(|e| e.to_string())?;
    let y = synthesize_data(&f, &cfg.params).map_err(|e| e.to_string())?;
    let y_fd = pde_oracle(&f, &cfg.params, 6.0, 600).map_err(|e| e.to_string())?;
    let rel = l2_norm(&y.sub(&y_fd).unwrap()) / l2_norm(&y_fd);
    let elapsed = start.elapsed();
    if rel >= 0.02 {
        return Err(format!("spectral vs finite-difference mismatch {rel:.4}, limit 0.02"));
    }
    if elapsed.as_secs_f64() >= 120.0 {
        return Err(format!("cross-validation took {elapsed:.2?}, limit 2 min"));
    }
    Ok(format!("relative mismatch {rel:.4} in {elapsed:.2?}"))
}

fn deltas_10() -> Vec<f64> {
    (1..=10).map(|i| i as f64 * 0.01).collect()
}

fn seeds_20() -> Vec<u64> {
    (1..=20).collect()
}

fn criterion4() -> Outcome {
    let cfg = ex1();
    let reports = sweep(
        &cfg.source,
        &cfg.params,
        cfg.grid,
        &deltas_10(),
        cfg.p,
        MuRule::Section5,
        &seeds_20(),
    )
    .map_err(|e| e.to_string())?;
    let rows = aggregate(&reports);
    let mut problems = Vec::new();
    for row in &rows {
        if row.err_reg_mean >= row.err_unreg_mean {
            problems.push(format!(
                "delta {}: regularized mean {:.3} not below unregularized mean {:.3}",
                row.delta, row.err_reg_mean, row.err_unreg_mean
            ));
        }
        if !(2.5..=8.0).contains(&row.err_reg_mean) {
            problems.push(format!(
                "delta {}: regularized mean {:.3} outside [2.5, 8.0]",
                row.delta, row.err_reg_mean
            ));
        }
    }
    if problems.is_empty() {
        Ok(format!(
            "regularized means {:.3}..{:.3}, below unregularized at all 10 noise levels",
            rows.first().unwrap().err_reg_mean,
            rows.last().unwrap().err_reg_mean
        ))
    } else {
        Err(problems.join("; "))
    }
}

fn criterion5() -> Outcome {
    let cfg = ex2();
    let reports = sweep(
        &cfg.source,
        &cfg.params,
        cfg.grid,
        &deltas_10(),
        cfg.p,
        MuRule::Section5,
        &seeds_20(),
    )
    .map_err(|e| e.to_string())?;
    let rows = aggregate(&reports);
    let mut problems = Vec::new();
    let inversions = rows
        .windows(2)
        .filter(|w| w[1].err_reg_mean < w[0].err_reg_mean)
        .count();
    if inversions > 1 {
        problems.push(format!("{inversions} adjacent-pair inversions in the mean regularized error (1 allowed)"));
    }
    for row in &rows {
        if row.err_reg_mean >= row.err_unreg_mean {
            problems.push(format!(
                "delta {}: regularized mean {:.3} not below unregularized mean {:.3}",
                row.delta, row.err_reg_mean, row.err_unreg_mean
            ));
        }
    }
    let violations = reports.iter().filter(|r| r.err_regularized > r.bound).count();
    if violations > 0 {
        problems.push(format!("{violations} individual runs exceeded the theoretical bound"));
    }
    if problems.is_empty() {
        Ok(format!(
            "regularized means rise {:.3}..{:.3} with {} inversions, all {} runs within bound",
            rows.first().unwrap().err_reg_mean,
            rows.last().unwrap().err_reg_mean,
            inversions,
            reports.len()
        ))
    } else {
        Err(problems.join("; "))
    }
}

fn criterion6() -> Outcome {
    let mut total = 0usize;
    let mut violations = 0usize;
    for cfg in [ex1(), ex2()] {
        for rule in [MuRule::Theorem2, MuRule::Section5] {
            let reports = sweep(
                &cfg.source,
                &cfg.params,
                cfg.grid,
                &deltas_10(),
                cfg.p,
                rule,
                &seeds_20(),
            )
            .map_err(|e| e.to_string())?;
            total += reports.len();
            violations += reports.iter().filter(|r| r.err_regularized > r.bound).count();
        }
    }
    if violations > 0 {
        Err(format!("{violations} of {total} runs exceeded the theoretical bound"))
    } else {
        Ok(format!("0 bound violations across {total} runs"))
    }
}

fn criterion7() -> Outcome {
    let start = Instant::now();
    let cfg = ex1();
    let deltas = [1e-4, 1e-3, 1e-2, 1e-1];
    let seeds: Vec<u64> = (1..=10).collect();
    let reports = sweep(
        &cfg.source,
        &cfg.params,
        cfg.grid,
        &deltas,
        cfg.p,
        MuRule::Section5,
        &seeds,
    )
    .map_err(|e| e.to_string())?;
    let slope = estimate_rate(&reports).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if !(0.2..=0.8).contains(&slope) {
        return Err(format!("estimated rate exponent {slope:.4} outside 0.5 +/- 0.3"));
    }
    if elapsed.as_secs_f64() >= 300.0 {
        return Err(format!("rate estimation took {elapsed:.2?}, limit 5 min"));
    }
    Ok(format!("estimated rate exponent {slope:.4} in {elapsed:.2?}"))
}

fn criterion8() -> Outcome {
    let dir_a = tempfile::tempdir().map_err(|e| e.to_string())?;
    let dir_b = tempfile::tempdir().map_err(|e| e.to_string())?;
    let overrides = |dir: &std::path::Path| Overrides {
        deltas: Some(vec![0.01, 0.05, 0.1]),
        seeds: Some(vec![1, 2, 3, 4, 5]),
        output_dir: Some(dir.to_path_buf()),
        ..Default::default()
    };
    let mut compared = 0usize;
    for preset in [Preset::Example1, Preset::Example2] {
        let out_a = run_preset(preset, &overrides(dir_a.path())).map_err(|e| e.to_string())?;
        let out_b = run_preset(preset, &overrides(dir_b.path())).map_err(|e| e.to_string())?;
        let mut paths_a = vec![out_a.errors_csv.clone()];
        paths_a.extend(out_a.reconstruction_csvs.iter().cloned());
        let mut paths_b = vec![out_b.errors_csv.clone()];
        paths_b.extend(out_b.reconstruction_csvs.iter().cloned());
        for (a, b) in paths_a.iter().zip(&paths_b) {
            let bytes_a = std::fs::read(a).map_err(|e| e.to_string())?;
            let bytes_b = std::fs::read(b).map_err(|e| e.to_string())?;
            if bytes_a != bytes_b {
                return Err(format!(
                    "{} and {} differ between identical runs",
                    a.display(),
                    b.display()
                ));
            }
            compared += 1;
        }
    }
    Ok(format!("{compared} CSV files byte-identical across repeated runs"))
}

#[test]
fn acceptance_suite() {
    let mut gate = Gate::new();
    gate.record(1, "property checks", criterion1());
    gate.record(2, "exact-inverse round trip", criterion2());
    gate.record(3, "forward-map cross-validation", criterion3());
    gate.record(4, "first example error table trend", criterion4());
    gate.record(5, "second example error table trend", criterion5());
    gate.record(6, "theoretical bound never violated", criterion6());
    gate.record(7, "convergence rate", criterion7());
    gate.record(8, "deterministic output", criterion8());

    assert!(
        gate.failures.is_empty(),
        "{} criterion(s) failed:\n{}",
        gate.failures.len(),
        gate.failures.join("\n")
    );
}
