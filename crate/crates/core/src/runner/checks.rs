//! Numeric property suite for the closed-form inequalities behind the
//! stabilized multiplier: the auxiliary lemmas, the uniform multiplier
//! bound, the filter sup bound, and Hermitian symmetry.
//!
//! Each check reports a worst-case margin: the smallest slack observed
//! between the bounded quantity and its bound (positive means the
//! inequality held everywhere with room to spare).

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::transport_kernel::{
    lambda_symbol, lemma4_bound, stabilized_multiplier, Mu, TransportParams,
};

const REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct PropertyCheck {
    pub name: String,
    pub passed: bool,
    /// Worst-case slack; interpretation depends on the check but positive
    /// always means "held with margin".
    pub margin: f64,
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub checks: Vec<PropertyCheck>,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// The two preset parameter sets plus reproducibly sampled valid ones.
pub fn check_parameter_sets(random_count: usize) -> Vec<TransportParams> {
    let mut sets = vec![
        TransportParams::new(0.01, 0.5, 1.51, 2.0).unwrap(),
        TransportParams::new(0.1, 0.9, 1.0, 3.0).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    for _ in 0..random_count {
        sets.push(
            TransportParams::new(
                rng.gen_range(0.005..2.0),
                rng.gen_range(0.0..2.0),
                rng.gen_range(0.05..3.0),
                rng.gen_range(0.5..8.0),
            )
            .unwrap(),
        );
    }
    sets
}

fn principal_sqrt(w: Complex64) -> Complex64 {
    w.sqrt()
}

/// |1/(1 - e^{-w})| <= 1/(1 - e^{-Re w}) for Re w > 0.
fn lemma1_modulus_check() -> PropertyCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut margin = f64::INFINITY;
    for _ in 0..1000 {
        let w = Complex64::new(rng.gen_range(1e-3..50.0), rng.gen_range(-100.0..100.0));
        let lhs = (Complex64::new(1.0, 0.0) - (-w).exp()).norm().recip();
        let rhs = 1.0 / (1.0 - (-w.re).exp());
        margin = margin.min(rhs - lhs);
    }
    PropertyCheck {
        name: "lemma1_modulus".into(),
        passed: margin >= -REL_TOL,
        margin,
    }
}

fn lemma1_sqrt_check_with<F>(sqrt_fn: F) -> PropertyCheck
where
    F: Fn(Complex64) -> Complex64,
{
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst_identity = 0.0f64;
    let mut margin = f64::INFINITY;
    for _ in 0..1000 {
        let w = Complex64::new(rng.gen_range(1e-3..50.0), rng.gen_range(-100.0..100.0));
        let re_root = sqrt_fn(w).re;
        let identity = ((w.re + w.norm()) / 2.0).sqrt();
        worst_identity = worst_identity.max((re_root - identity).abs() / identity);
        margin = margin.min(re_root - w.re.sqrt());
    }
    PropertyCheck {
        name: "lemma1_sqrt_real_part".into(),
        passed: worst_identity < REL_TOL && margin >= -REL_TOL,
        margin,
    }
}

/// |x| / (1 + x^2 mu^2) <= 1/(2 mu) for 0 < mu < 1.
fn lemma2_check() -> PropertyCheck {
    let mut margin = f64::INFINITY;
    for k in 1..100 {
        let mu = k as f64 * 0.01;
        let rhs = 1.0 / (2.0 * mu);
        // dense log-spaced |x| plus the maximizer region around 1/mu
        for i in 0..=4000 {
            let x = 10f64.powf(-6.0 + 12.0 * i as f64 / 4000.0).min(1e6);
            for x in [x, -x, x / mu, 0.0] {
                let lhs = x.abs() / (1.0 + x * x * mu * mu);
                margin = margin.min(rhs - lhs);
            }
        }
    }
    PropertyCheck { name: "lemma2_rational_bound".into(), passed: margin >= -REL_TOL, margin }
}

/// g(x) = x/(1-e^{-x}) on (0,1), 1/(1-e^{-x}) on [1,inf) satisfies g <= 2.
fn lemma3_check() -> PropertyCheck {
    let mut margin = f64::INFINITY;
    for i in 1..=200_000 {
        let x = 100.0 * i as f64 / 200_000.0;
        let g = if x < 1.0 { x / (1.0 - (-x).exp()) } else { 1.0 / (1.0 - (-x).exp()) };
        margin = margin.min(2.0 - g);
    }
    PropertyCheck { name: "lemma3_g_bound".into(), passed: margin >= -REL_TOL, margin }
}

fn xi_samples(mu: f64) -> Vec<f64> {
    let mut xs = vec![0.0];
    for k in -2..=6 {
        xs.push(10f64.powi(k));
    }
    // linear sampling around the filter knee 1/mu
    for i in 1..=200 {
        xs.push(i as f64 * 2.0 / (200.0 * mu));
    }
    let negs: Vec<f64> = xs.iter().map(|x| -x).collect();
    xs.extend(negs);
    xs
}

/// |Lambda(xi)/(1+xi^2 mu^2)| <= lemma4_bound(mu) across parameter sets.
fn lemma4_check(sets: &[TransportParams]) -> PropertyCheck {
    let mut margin = f64::INFINITY;
    for params in sets {
        for &mu_v in &[0.01, 0.1, 0.5, 0.9] {
            let mu = Mu::new(mu_v).unwrap();
            let bound = lemma4_bound(mu, params);
            for xi in xi_samples(mu_v) {
                let val = stabilized_multiplier(xi, mu, params).norm();
                // normalized slack so large-bound parameter sets do not mask
                // a violation elsewhere
                margin = margin.min((bound - val) / bound);
            }
        }
    }
    PropertyCheck { name: "lemma4_multiplier_bound".into(), passed: margin >= -REL_TOL, margin }
}

/// Lambda(-xi) = conj(Lambda(xi)); margin is tolerance minus worst relative
/// asymmetry.
fn hermitian_symmetry_check(sets: &[TransportParams]) -> PropertyCheck {
    let mut worst = 0.0f64;
    for params in sets {
        for &xi in &[0.1, 1.0, 3.7, 25.0, 400.0, 1e5] {
            let plus = lambda_symbol(xi, params);
            let minus = lambda_symbol(-xi, params);
            worst = worst.max((plus.conj() - minus).norm() / plus.norm());
        }
    }
    PropertyCheck {
        name: "hermitian_symmetry".into(),
        passed: worst < REL_TOL,
        margin: REL_TOL - worst,
    }
}

/// |stabilized(xi, mu) - Lambda(xi)| decreases monotonically as mu halves.
fn pointwise_convergence_check(sets: &[TransportParams]) -> PropertyCheck {
    let mut margin = f64::INFINITY;
    let mut passed = true;
    for params in sets {
        for &xi in &[0.3, 2.0, 17.0] {
            let lambda = lambda_symbol(xi, params);
            let mut prev = f64::INFINITY;
            let mut mu_v = 0.5;
            while mu_v > 1e-6 {
                let gap = (stabilized_multiplier(xi, Mu::new(mu_v).unwrap(), params) - lambda)
                    .norm();
                if prev.is_finite() {
                    let decrement = prev - gap;
                    margin = margin.min(decrement);
                    if decrement < -REL_TOL * lambda.norm() {
                        passed = false;
                    }
                }
                prev = gap;
                mu_v /= 2.0;
            }
            if prev > 1e-6 * lambda.norm() {
                passed = false; // never got close to the limit
            }
        }
    }
    PropertyCheck { name: "pointwise_convergence".into(), passed, margin }
}

/// sup over xi of (1+xi^2)^(-p/2)(1 - 1/(1+xi^2 mu^2)) <= max{mu^p, mu^2}.
fn filter_sup_check() -> PropertyCheck {
    let mut margin = f64::INFINITY;
    for &mu in &[0.05, 0.2, 0.5] {
        for &p in &[0.5, 2.0, 3.0] {
            let bound = Mu::new(mu).unwrap().value().powf(p).max(mu * mu);
            let hi = 10.0 / mu;
            let mut sup = 0.0f64;
            let samples = 200_000;
            for i in 0..=samples {
                let xi = hi * i as f64 / samples as f64;
                let v = (1.0 + xi * xi).powf(-p / 2.0)
                    * (1.0 - 1.0 / (1.0 + xi * xi * mu * mu));
                sup = sup.max(v);
            }
            margin = margin.min((bound - sup) / bound);
        }
    }
    PropertyCheck { name: "filter_sup_bound".into(), passed: margin >= -REL_TOL, margin }
}

/// Run the full suite against the preset parameter sets plus `random_count`
/// sampled valid parameter sets.
pub fn run_checks_with(random_count: usize) -> CheckReport {
    let sets = check_parameter_sets(random_count);
    CheckReport {
        checks: vec![
            lemma1_modulus_check(),
            lemma1_sqrt_check_with(principal_sqrt),
            lemma2_check(),
            lemma3_check(),
            lemma4_check(&sets),
            hermitian_symmetry_check(&sets),
            pointwise_convergence_check(&sets),
            filter_sup_check(),
        ],
    }
}

pub fn run_checks() -> CheckReport {
    run_checks_with(20)
}
