use proptest::prelude::*;
use speckle_edge::gi0::{gi0_moment, sample_gi0, GI0Params};
use speckle_edge::moments::{solve_alpha, MomentEquation, MomentEstimator, MomentPair};
use speckle_edge::{estimate_params, RngStream};

fn population(a: f64, g: f64, l: f64) -> MomentPair {
    let p = GI0Params::new(a, g, l).unwrap();
    MomentPair::new(gi0_moment(1.0, &p), gi0_moment(0.5, &p), 1000).unwrap()
}

#[test]
fn recovers_alpha_from_population_moments() {
    for &a in &[-2.0, -3.0, -4.0, -6.0, -8.0, -12.0, -20.0, -40.0] {
        for &l in &[1.0, 3.0, 3.2, 8.0] {
            for &g in &[0.5, -a - 1.0, 40.0] {
                let got = solve_alpha(&population(a, g, l), l).unwrap();
                assert!((got - a).abs() < 1e-4, "a={a} g={g} l={l} got={got}");
            }
        }
    }
}

#[test]
fn gamma_follows_alpha() {
    let est = MomentEstimator::default();
    let p = est.estimate_from_moments(&population(-6.0, 2.5, 3.0), 3.0).unwrap();
    assert!(p.converged);
    assert!((p.gamma_hat - 2.5).abs() < 1e-3);
}

#[test]
fn equation_changes_sign_on_default_bracket() {
    let est = MomentEstimator::default();
    for &a in &[-1.5, -5.0, -50.0] {
        let m = population(a, 1.0, 1.0);
        let g = MomentEquation::new(&m, 1.0);
        assert!(g.eval(est.alpha_min) > 0.0);
        assert!(g.eval(est.upper_bracket()) < 0.0);
        assert!(g.eval(a).abs() < 1e-12);
    }
}

#[test]
fn estimates_from_large_samples_are_consistent() {
    for &(a, l) in &[(-3.0, 1.0), (-8.0, 3.0)] {
        let p = GI0Params::unit_mean(a, l).unwrap();
        let z = sample_gi0(&p, 200_000, &mut RngStream::new(21, 0));
        let e = estimate_params(&z, l).unwrap();
        assert!(e.converged);
        assert!((e.alpha_hat - a).abs() < 0.15 * -a, "a={a} got={}", e.alpha_hat);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn alpha_is_scale_free(seed in 0u64..1000, k in -3i32..4) {
        let p = GI0Params::unit_mean(-5.0, 2.0).unwrap();
        let z = sample_gi0(&p, 200, &mut RngStream::new(seed, 0));
        let c = 4f64.powi(k);
        let scaled: Vec<f64> = z.iter().map(|v| v * c).collect();
        let a = estimate_params(&z, 2.0).unwrap();
        let b = estimate_params(&scaled, 2.0).unwrap();
        prop_assert_eq!(a.alpha_hat, b.alpha_hat);
        prop_assert_eq!(a.converged, b.converged);
        prop_assert!((b.gamma_hat - c * a.gamma_hat).abs() <= 1e-12 * b.gamma_hat.abs());
    }

    #[test]
    fn alpha_stays_in_bracket(data in prop::collection::vec(1e-6f64..1e6, 20..80), l in 1.0f64..10.0) {
        let est = MomentEstimator::default();
        if let Ok(p) = est.estimate_params(&data, l) {
            prop_assert!(p.alpha_hat >= est.alpha_min && p.alpha_hat <= est.upper_bracket());
            prop_assert!(p.gamma_hat > 0.0);
        }
    }
}
