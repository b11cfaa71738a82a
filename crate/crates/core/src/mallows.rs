//! The Mallows(q) distribution on arrival orders.
//!
//! `P(sigma)` is proportional to `q^inv(sigma)`. Sampling uses the online
//! insertion construction: rank `j` is dropped onto a line with `X_j`
//! previously placed ranks to its right, where `X_j` is geometric with
//! parameter `1 - q` truncated to `0..j`. The resulting permutation has
//! `sum X_j` inversions and is an exact Mallows draw.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{self, UNIFORM_EPSILON};
use crate::permutation::Permutation;

/// Mallows model on `S_n` with `0 < q <= 1`. `q = 1` is the uniform law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MallowsModel {
    n: usize,
    q: f64,
    log_normalizer: f64,
}

impl MallowsModel {
    pub fn new(n: usize, q: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("n", 0.0, "n >= 1"));
        }
        check_q(q)?;
        Ok(Self {
            n,
            q,
            log_normalizer: log_normalizer(n, q),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// `ln Z_n(q)`; equals `ln n!` when `q = 1`.
    pub fn log_normalizer(&self) -> f64 {
        self.log_normalizer
    }

    pub fn is_uniform(&self) -> bool {
        self.q == 1.0
    }

    /// `inv(p) ln q - ln Z_n(q)`.
    pub fn log_pmf(&self, p: &Permutation) -> Result<f64> {
        if p.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: p.len(),
            });
        }
        if self.is_uniform() {
            return Ok(-self.log_normalizer);
        }
        Ok(p.inversion_count() as f64 * self.q.ln() - self.log_normalizer)
    }

    pub fn pmf(&self, p: &Permutation) -> Result<f64> {
        self.log_pmf(p).map(f64::exp)
    }

    /// Draws the insertion offsets `X_1 = 0, X_2, ..., X_n`.
    pub fn sample_offsets<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.n);
        offsets.push(0);
        offsets.extend((2..=self.n).map(|j| sample_x_j(j, self.q, rng)));
        offsets
    }

    /// An exact Mallows draw, in arrival order.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        Permutation::place(&self.sample_offsets(rng))
    }
}

fn check_q(q: f64) -> Result<()> {
    if q > 0.0 && q <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain("q", q, "0 < q <= 1"))
    }
}

/// `ln Z_n(q) = sum_{k=2..n} ln(1 - q^k) - (n - 1) ln(1 - q)`, or `ln n!`
/// for `q = 1`.
pub fn log_normalizer(n: usize, q: f64) -> f64 {
    if q == 1.0 {
        return numeric::ln_factorial(n);
    }
    if n <= 1 {
        return 0.0;
    }
    let log_q = q.ln();
    let sum: f64 = (2..=n)
        .map(|k| numeric::ln_one_minus_pow(log_q, k as f64))
        .sum();
    sum - (n - 1) as f64 * (1.0 - q).ln()
}

/// One draw of the truncated geometric `X_j`:
/// `P(X_j = m) = (1 - q) q^m / (1 - q^j)` for `m = 0..j`.
///
/// Closed-form inversion of the CDF `(1 - q^(m+1)) / (1 - q^j)`; `q` within
/// [`UNIFORM_EPSILON`] of one falls back to a uniform integer.
pub fn sample_x_j<R: Rng + ?Sized>(j: usize, q: f64, rng: &mut R) -> usize {
    debug_assert!(j >= 1);
    if 1.0 - q <= UNIFORM_EPSILON {
        return rng.random_range(0..j);
    }
    let log_q = q.ln();
    let u: f64 = rng.random();
    truncated_geometric_quantile(u, j, log_q)
}

/// Inverse CDF of the truncated geometric at `u` in `[0, 1)`.
pub(crate) fn truncated_geometric_quantile(u: f64, j: usize, log_q: f64) -> usize {
    let t = u * numeric::one_minus_pow(log_q, j as f64);
    let m = (-t).ln_1p() / log_q;
    // rounding can push m to j when u is within an ulp of 1
    (m.floor() as usize).min(j - 1)
}
