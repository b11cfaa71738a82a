//! Seeded statistical checks of the sampler and the Monte Carlo estimators
//! against the closed forms.

use secretary_mallows::asymptotics::{inversion_limit_weak, RegimeSpec};
use secretary_mallows::montecarlo::{estimate_inversion_moment, estimate_success};
use secretary_mallows::policy::{optimal_threshold, success_probability_exact};

#[test]
fn single_worker_matches_sequential_definition() {
    // workers = 1 is one stream seeded with the base seed
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use secretary_mallows::{MallowsModel, ThresholdStrategy};

    let (n, m, q, samples, seed) = (25, 9, 0.85, 5_000u64, 31);
    let model = MallowsModel::new(n, q).unwrap();
    let s = ThresholdStrategy::new(n, m).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hits = (0..samples)
        .filter(|_| s.play(&model.sample(&mut rng)).unwrap().success)
        .count();
    let r = estimate_success(n, m, q, samples, seed, 1).unwrap();
    assert_eq!(r.estimate, hits as f64 / samples as f64);
}

#[test]
fn estimates_are_reproducible_across_runs() {
    let a = estimate_success(40, 12, 0.9, 50_000, 123, 6).unwrap();
    let b = estimate_success(40, 12, 0.9, 50_000, 123, 6).unwrap();
    assert_eq!(a.estimate.to_bits(), b.estimate.to_bits());
    assert_eq!((a.base_seed, a.workers, a.samples), (123, 6, 50_000));
}

#[test]
fn mid_size_estimate_agrees_with_exact() {
    let (n, q) = (100, 0.95);
    let m = optimal_threshold(n, q).unwrap().m_star;
    let exact = success_probability_exact(n, m, q).unwrap().value;
    let r = estimate_success(n, m, q, 200_000, 55, 4).unwrap();
    assert!((r.estimate - exact).abs() < 3.0 * r.std_error, "{r:?} vs {exact}");
}

#[test]
fn coverage_calibration() {
    let exact = success_probability_exact(20, 5, 0.5).unwrap().value;
    let covered = (0..100u64)
        .filter(|&i| {
            let r = estimate_success(20, 5, 0.5, 10_000, 9_000 + 17 * i, 2).unwrap();
            (r.estimate - exact).abs() <= 3.0 * r.std_error
        })
        .count();
    assert!(covered >= 92, "{covered}/100");
}

#[test]
fn strong_bias_inversions_scale_linearly() {
    let r = estimate_inversion_moment(2000, 0.5, 200, 1.0, 1, 4).unwrap();
    assert!((r.estimate - 1.0).abs() < 0.05, "{r:?}");
}

#[test]
fn moderate_bias_inversions_scale_as_n_to_one_plus_alpha() {
    let n = 10_000;
    let (c, alpha) = (1.0, 0.5);
    let q = RegimeSpec::moderate(c, alpha).unwrap().q_for(n).unwrap();
    let r = estimate_inversion_moment(n, q, 200, 1.0 + alpha, 2, 4).unwrap();
    assert!((r.estimate - 1.0 / c).abs() < 0.10 / c, "{r:?}");
}

#[test]
fn uniform_inversions_quarter_n_squared() {
    let r = estimate_inversion_moment(2000, 1.0, 200, 2.0, 3, 4).unwrap();
    assert!((r.estimate - 0.25).abs() < 0.02 * 0.25, "{r:?}");
}

#[test]
fn weak_bias_inversions_match_integral_limit() {
    let n = 10_000;
    let q = RegimeSpec::weak(1.0).unwrap().q_for(n).unwrap();
    let r = estimate_inversion_moment(n, q, 200, 2.0, 4, 4).unwrap();
    let limit = inversion_limit_weak(1.0).unwrap();
    assert!((r.estimate - limit).abs() < 0.10 * limit, "{r:?} vs {limit}");
}
