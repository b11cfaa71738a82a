//! Seeded Monte Carlo estimates, used as an oracle independent of the closed
//! forms in [`crate::policy`] and [`crate::asymptotics`].
//!
//! Work is split over `workers` streams. Worker `k` draws from
//! `ChaCha8Rng::seed_from_u64(base_seed.wrapping_add(k))` (see
//! [`worker_seed`]) and handles `samples / workers` draws, the first
//! `samples % workers` workers taking one extra. Per-worker results are
//! integers and are combined by exact integer addition, so an estimate is a
//! pure function of `(base_seed, workers, samples)` regardless of thread
//! scheduling. Different worker counts use different streams and are not
//! expected to agree bit-for-bit.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mallows::MallowsModel;
use crate::policy::ThresholdStrategy;

/// A Monte Carlo point estimate with its provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimateReport {
    pub estimate: f64,
    pub samples: u64,
    pub std_error: f64,
    pub base_seed: u64,
    pub workers: usize,
}

/// Seed of worker `k`'s stream.
pub fn worker_seed(base_seed: u64, worker: usize) -> u64 {
    base_seed.wrapping_add(worker as u64)
}

/// Draws handled by worker `k`.
pub fn worker_share(samples: u64, workers: usize, worker: usize) -> u64 {
    let w = workers as u64;
    samples / w + u64::from((worker as u64) < samples % w)
}

fn check_run(samples: u64, workers: usize) -> Result<()> {
    if samples == 0 {
        return Err(Error::domain("samples", 0.0, "samples >= 1"));
    }
    if workers == 0 {
        return Err(Error::domain("workers", 0.0, "workers >= 1"));
    }
    Ok(())
}

fn run_workers<T, F>(samples: u64, base_seed: u64, workers: usize, job: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, u64) -> T + Sync,
{
    (0..workers)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(worker_seed(base_seed, k));
            job(&mut rng, worker_share(samples, workers, k))
        })
        .collect()
}

/// Frequency with which `S(n, m)` picks the best item over `samples`
/// Mallows(q) arrival orders. `std_error = sqrt(p (1 - p) / samples)`.
pub fn estimate_success(
    n: usize,
    m: usize,
    q: f64,
    samples: u64,
    base_seed: u64,
    workers: usize,
) -> Result<EstimateReport> {
    let model = MallowsModel::new(n, q)?;
    let strategy = ThresholdStrategy::new(n, m)?;
    check_run(samples, workers)?;

    let successes: u64 = run_workers(samples, base_seed, workers, |rng, share| {
        (0..share)
            .filter(|_| {
                let p = model.sample(rng);
                strategy.play(&p).expect("sizes agree").success
            })
            .count() as u64
    })
    .into_iter()
    .sum();

    let estimate = successes as f64 / samples as f64;
    Ok(EstimateReport {
        estimate,
        samples,
        std_error: (estimate * (1.0 - estimate) / samples as f64).sqrt(),
        base_seed,
        workers,
    })
}

/// Mean of `inv(sigma) / n^scaling_exponent` over Mallows(q) draws, with the
/// standard error of the mean (sample variance, `samples - 1` denominator;
/// zero for a single draw).
///
/// Typical exponents: 1 for fixed `q`, `1 + alpha` for `q = 1 - c/n^alpha`,
/// 2 for `q = 1 - c/n` and for the uniform law.
pub fn estimate_inversion_moment(
    n: usize,
    q: f64,
    samples: u64,
    scaling_exponent: f64,
    base_seed: u64,
    workers: usize,
) -> Result<EstimateReport> {
    let model = MallowsModel::new(n, q)?;
    check_run(samples, workers)?;
    if !scaling_exponent.is_finite() || scaling_exponent < 0.0 {
        return Err(Error::domain("scaling_exponent", scaling_exponent, "finite and >= 0"));
    }

    let (sum, sum_sq) = run_workers(samples, base_seed, workers, |rng, share| {
        let mut s = 0u128;
        let mut s2 = 0u128;
        for _ in 0..share {
            let inv = model.sample(rng).inversion_count() as u128;
            s += inv;
            s2 += inv * inv;
        }
        (s, s2)
    })
    .into_iter()
    .fold((0u128, 0u128), |(a, b), (c, d)| (a + c, b + d));

    let k = samples as f64;
    let scale = (n as f64).powf(scaling_exponent);
    let mean_raw = sum as f64 / k;
    let var_raw = if samples > 1 {
        // exact integer numerator: k * sum_sq - sum^2
        let num = samples as u128 * sum_sq - sum * sum;
        num as f64 / (k * (k - 1.0))
    } else {
        0.0
    };
    Ok(EstimateReport {
        estimate: mean_raw / scale,
        samples,
        std_error: (var_raw / k).sqrt() / scale,
        base_seed,
        workers,
    })
}
