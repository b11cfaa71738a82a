//! Threshold strategies `S(n, m)`: reject the first `m` arrivals, then take
//! the first arrival that beats all of them; the last arrival is taken if
//! nothing does.
//!
//! Only the threshold family is optimized here. The scan finds the best `m`
//! within that family; optimality over all stopping rules is not claimed.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric;
use crate::permutation::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ThresholdStrategy {
    n: usize,
    m: usize,
}

impl ThresholdStrategy {
    /// `m` initial rejections out of `n` items; requires `m <= n - 1`.
    pub fn new(n: usize, m: usize) -> Result<Self> {
        check_nm(n, m)?;
        Ok(Self { n, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Runs the strategy on one arrival order.
    pub fn play(&self, p: &Permutation) -> Result<Outcome> {
        play(p, *self)
    }
}

/// Result of running a strategy on one arrival order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Outcome {
    /// 1-based arrival index of the accepted item.
    pub selected: usize,
    /// Whether the accepted item has the highest rank `n`.
    pub success: bool,
}

/// Plays `S(n, m)` on `p`.
///
/// When no later arrival beats the first `m`, the last arrival is accepted
/// and reported; in that case rank `n` was among the rejected prefix, so
/// this never turns a failure into a success.
pub fn play(p: &Permutation, s: ThresholdStrategy) -> Result<Outcome> {
    let n = s.n;
    if p.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: p.len(),
        });
    }
    let ranks = p.as_slice();
    let selected = if s.m == 0 {
        1
    } else {
        let bar = ranks[..s.m].iter().copied().max().unwrap_or(0);
        ranks[s.m..]
            .iter()
            .position(|&r| r > bar)
            .map_or(n, |offset| s.m + offset + 1)
    };
    Ok(Outcome {
        selected,
        success: ranks[selected - 1] == n,
    })
}

/// Success probability of `S(n, m)` with the parameters it was computed for.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuccessProbability {
    pub value: f64,
    pub n: usize,
    pub m: usize,
    pub q: f64,
}

/// Best threshold within the family `S(n, 0..n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimalThreshold {
    pub m_star: usize,
    pub p_star: SuccessProbability,
}

fn check_nm(n: usize, m: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("n", 0.0, "n >= 1"));
    }
    if m >= n {
        return Err(Error::domain("m", m as f64, "0 <= m <= n - 1"));
    }
    Ok(())
}

fn check_open_q(q: f64) -> Result<()> {
    if q > 0.0 && q < 1.0 {
        Ok(())
    } else {
        Err(Error::domain("q", q, "0 < q < 1 (use the uniform evaluator for q = 1)"))
    }
}

/// Exact success probability under Mallows(q), `0 < q < 1`:
///
/// ```text
/// m >= 1:  (1-q)/(1-q^n) * q^(n-m-1) * (1-q^m) * sum_{j=m+1..n} 1/(1-q^(j-1))
/// m = 0:   (1-q)/(1-q^n) * q^(n-1)
/// ```
///
/// The prefactor is formed in log space (`q^(n-m-1)` underflows under strong
/// bias) and the sum in linear space. O(n - m).
pub fn success_probability_exact(n: usize, m: usize, q: f64) -> Result<SuccessProbability> {
    check_nm(n, m)?;
    check_open_q(q)?;
    let log_q = q.ln();
    let value = if m == 0 {
        log_prefactor(n, 0, log_q).exp()
    } else {
        let sum: f64 = (m + 1..=n)
            .rev()
            .map(|j| sum_term(log_q, j))
            .sum();
        log_prefactor(n, m, log_q).exp() * sum
    };
    Ok(SuccessProbability {
        value: value.clamp(0.0, 1.0),
        n,
        m,
        q,
    })
}

/// Uniform arrival order (`q = 1`): `(m/n) sum_{j=m+1..n} 1/(j-1)`, and
/// `1/n` for `m = 0`.
pub fn success_probability_uniform(n: usize, m: usize) -> Result<SuccessProbability> {
    check_nm(n, m)?;
    let value = if m == 0 {
        1.0 / n as f64
    } else {
        let sum: f64 = (m + 1..=n).rev().map(|j| 1.0 / (j - 1) as f64).sum();
        m as f64 / n as f64 * sum
    };
    Ok(SuccessProbability {
        value: value.clamp(0.0, 1.0),
        n,
        m,
        q: 1.0,
    })
}

/// Dispatches on `q`: the closed form for `0 < q < 1`, the classical value
/// for `q = 1`.
pub fn success_probability(n: usize, m: usize, q: f64) -> Result<SuccessProbability> {
    if q == 1.0 {
        success_probability_uniform(n, m)
    } else {
        success_probability_exact(n, m, q)
    }
}

/// `ln[(1-q)/(1-q^n) q^(n-m-1) (1-q^m)]`, without the `1-q^m` factor when
/// `m = 0`.
fn log_prefactor(n: usize, m: usize, log_q: f64) -> f64 {
    let mut lp = numeric::ln_one_minus_pow(log_q, 1.0) - numeric::ln_one_minus_pow(log_q, n as f64)
        + (n - m - 1) as f64 * log_q;
    if m > 0 {
        lp += numeric::ln_one_minus_pow(log_q, m as f64);
    }
    lp
}

#[inline]
fn sum_term(log_q: f64, j: usize) -> f64 {
    1.0 / numeric::one_minus_pow(log_q, (j - 1) as f64)
}

/// Scans `m = 0..n` and returns the maximizer, smallest `m` on ties.
///
/// Consecutive thresholds differ by
///
/// ```text
/// P(m+1) - P(m) = C q^(n-m-2) [(1-q) S(m+1) - q],   S(m+1) = sum_{i=m+1..n-1} 1/(1-q^i)
/// ```
///
/// with `C > 0`, and `S` shrinks as `m` grows, so the success probability is
/// unimodal in `m` and `m*` is the first `m` where the bracket is `<= 0`.
/// The sign of the bracket is decided without forming the two
/// probabilities: writing `S(m+1) = k + T` with `k = n-1-m` and
/// `T = sum q^i/(1-q^i) > 0`, the bracket is `[k(1-q) - q] + (1-q) T`. The
/// first part vanishes exactly at the window boundaries `q = k/(k+1)`,
/// where the positive `T` decides; it is taken as zero whenever it is
/// within the rounding error of `q` itself, so a decimal input such as
/// `0.9` is treated as the boundary `9/10` rather than as the binary value
/// just above it (this matches [`crate::asymptotics::strong_window`]).
/// Differences far below the resolution of the probabilities (at
/// `q = 1/2`, `S(n, n-1)` wins by about `2^-n`) are still resolved. For
/// `q = 1` the bracket is `S(m+1) - 1` with `S(m+1) = sum_{i=m+1..n-1} 1/i`.
/// O(n).
pub fn optimal_threshold(n: usize, q: f64) -> Result<OptimalThreshold> {
    if n == 0 {
        return Err(Error::domain("n", 0.0, "n >= 1"));
    }
    if !(q > 0.0 && q <= 1.0) {
        return Err(Error::domain("q", q, "0 < q <= 1"));
    }
    let m_star = if q == 1.0 {
        first_non_increase(n, |m, tail| {
            // tail = sum_{i=m+1..n-1} 1/i
            *tail += 1.0 / (m + 1) as f64;
            *tail > 1.0
        })
    } else {
        let log_q = q.ln();
        let one_minus_q = 1.0 - q;
        first_non_increase(n, |m, tail| {
            // tail = T = sum_{i=m+1..n-1} q^i / (1 - q^i)
            let i = (m + 1) as f64;
            *tail += numeric::pow(log_q, i) / numeric::one_minus_pow(log_q, i);
            let k = (n - 1 - m) as f64;
            let base = k * one_minus_q - q;
            let slack = (k + 1.0) * f64::EPSILON * q;
            base >= -slack || one_minus_q * *tail > -base
        })
    };
    let p_star = success_probability(n, m_star, q)?;
    Ok(OptimalThreshold { m_star, p_star })
}

/// Walks `m = n-2, ..., 0`, feeding `increases(m, &mut tail)` the running
/// tail, and returns the smallest `m` from which the objective does not
/// increase (`n - 1` if it increases throughout).
fn first_non_increase(n: usize, mut increases: impl FnMut(usize, &mut f64) -> bool) -> usize {
    let mut m_star = n - 1;
    let mut tail = 0.0;
    for m in (0..n.saturating_sub(1)).rev() {
        if !increases(m, &mut tail) {
            m_star = m;
        }
    }
    m_star
}
