//! Randomized properties of the symbols, transforms and operators.

use num_complex::Complex64;
use proptest::prelude::*;
use srcid::*;

fn valid_params() -> impl Strategy<Value = TransportParams> {
    (0.005f64..2.0, 0.0f64..2.0, 0.05f64..3.0, 0.5f64..8.0)
        .prop_map(|(a2, b, nu, x0)| TransportParams::new(a2, b, nu, x0).unwrap())
}

proptest! {
    #[test]
    fn lambda_is_hermitian(params in valid_params(), xi in 1e-3f64..1e4) {
        let plus = lambda_symbol(xi, &params);
        let minus = lambda_symbol(-xi, &params);
        prop_assert!((plus.conj() - minus).norm() <= 1e-12 * plus.norm());
    }

    #[test]
    fn lambda_denominator_stays_off_zero(params in valid_params(), xi in -1e4f64..1e4) {
        // |Lambda| >= |z| / 2 because the exponential has modulus < 1 and
        // positive real part is removed from the denominator's unit disk edge
        let lambda = lambda_symbol(xi, &params);
        let z = Complex64::new(params.nu(), xi);
        prop_assert!(lambda.norm() >= z.norm() / 2.0);
    }

    #[test]
    fn stabilized_multiplier_within_bound(
        params in valid_params(),
        xi in -1e5f64..1e5,
        mu_v in 0.01f64..0.99,
    ) {
        let mu = Mu::new(mu_v).unwrap();
        let val = stabilized_multiplier(xi, mu, &params).norm();
        prop_assert!(val <= lemma4_bound(mu, &params) * (1.0 + 1e-12));
    }

    #[test]
    fn rational_kernel_inequality(mu in 0.001f64..0.999, x in -1e6f64..1e6) {
        // |x| / (1 + x^2 mu^2) <= 1/(2 mu)
        let lhs = x.abs() / (1.0 + x * x * mu * mu);
        prop_assert!(lhs <= 1.0 / (2.0 * mu) + 1e-12);
    }

    #[test]
    fn parseval_holds_for_random_signals(samples in prop::collection::vec(-10.0f64..10.0, 64)) {
        let grid = TimeGrid::new(64, 8.0, 2).unwrap();
        let s = Signal::new(grid, samples).unwrap();
        let time_norm = l2_norm(&s);
        let freq_norm = hp_norm(&s, 0.0).unwrap();
        prop_assert!((time_norm - freq_norm).abs() <= 1e-10 * time_norm.max(1e-30));
    }

    #[test]
    fn sobolev_norm_dominates_l2(
        samples in prop::collection::vec(-10.0f64..10.0, 64),
        p in 0.0f64..4.0,
    ) {
        let grid = TimeGrid::new(64, 8.0, 1).unwrap();
        let s = Signal::new(grid, samples).unwrap();
        prop_assert!(hp_norm(&s, p).unwrap() + 1e-12 >= l2_norm(&s));
    }

    #[test]
    fn transform_round_trip_is_lossless(samples in prop::collection::vec(-10.0f64..10.0, 128)) {
        let grid = TimeGrid::new(128, 10.0, 2).unwrap();
        let s = Signal::new(grid, samples).unwrap();
        let back = from_spectrum(&to_spectrum(&s)).unwrap();
        for (a, b) in s.samples().iter().zip(back.samples()) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn noise_level_is_exact(
        delta in 0.001f64..0.9,
        seed in 0u64..1000,
        samples in prop::collection::vec(-5.0f64..5.0, 64),
    ) {
        let grid = TimeGrid::new(64, 8.0, 1).unwrap();
        let y = Signal::new(grid, samples).unwrap();
        let sample = add_noise(&y, delta, seed).unwrap();
        let achieved = l2_norm(&sample.noisy.sub(&sample.clean).unwrap());
        prop_assert!((achieved - delta).abs() <= 1e-12 * delta);
    }

    #[test]
    fn regularized_operator_is_contractive_relative_to_bound(
        samples in prop::collection::vec(-5.0f64..5.0, 64),
        mu_v in 0.05f64..0.9,
    ) {
        let grid = TimeGrid::new(64, 8.0, 1).unwrap();
        let params = TransportParams::new(0.01, 0.5, 1.51, 2.0).unwrap();
        let y = Signal::new(grid, samples).unwrap();
        if l2_norm(&y) > 1e-9 {
            let mu = Mu::new(mu_v).unwrap();
            let out = apply_r_mu(&y, mu, &params).unwrap();
            prop_assert!(l2_norm(&out) <= lemma4_bound(mu, &params) * l2_norm(&y) * (1.0 + 1e-12));
        }
    }
}
