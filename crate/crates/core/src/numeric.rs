//! Stable evaluation of powers of `q` close to one.
//!
//! In the weak regime `q = 1 - c/n` with `n` up to 10^6, so `1 - q^k` is a
//! small difference of nearly equal numbers. Every quantity here is formed
//! from `k * ln q` through `exp_m1`/`ln_1p` instead of the raw power.

/// `q` values within this distance of one are treated as the uniform case
/// by the samplers.
pub const UNIFORM_EPSILON: f64 = 1e-12;

/// `q^k`, as `exp(k ln q)`.
#[inline]
pub fn pow(log_q: f64, k: f64) -> f64 {
    (k * log_q).exp()
}

/// `1 - q^k` without cancellation.
#[inline]
pub fn one_minus_pow(log_q: f64, k: f64) -> f64 {
    -(k * log_q).exp_m1()
}

/// `ln(1 - e^x)` for `x < 0`.
#[inline]
pub fn ln_one_minus_exp(x: f64) -> f64 {
    debug_assert!(x <= 0.0);
    if x > -std::f64::consts::LN_2 {
        (-x.exp_m1()).ln()
    } else {
        (-x.exp()).ln_1p()
    }
}

/// `ln(1 - q^k)`.
#[inline]
pub fn ln_one_minus_pow(log_q: f64, k: f64) -> f64 {
    ln_one_minus_exp(k * log_q)
}

/// `ln n!` by direct summation. Exact enough for the sizes used here and
/// free of gamma-function approximations.
pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_minus_pow_near_one() {
        let q: f64 = 1.0 - 1e-9;
        let d = 1.0 - q; // exact
        let v = one_minus_pow(q.ln(), 3.0);
        let expected = 3.0 * d - 3.0 * d * d + d * d * d;
        assert!((v / expected - 1.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn ln_one_minus_exp_branches_agree_with_naive() {
        for &x in &[-1e-3, -0.5, -0.7, -1.0, -5.0, -30.0] {
            let naive = (1.0 - f64::exp(x)).ln();
            assert!((ln_one_minus_exp(x) - naive).abs() < 1e-12 * naive.abs().max(1.0));
        }
        // naive loses everything here
        let tiny = ln_one_minus_exp(-1e-20);
        assert!((tiny - (1e-20f64).ln()).abs() < 1e-12);
    }

    #[test]
    fn ln_factorial_small() {
        assert_eq!(ln_factorial(0), 0.0);
        assert_eq!(ln_factorial(1), 0.0);
        assert!((ln_factorial(5) - 120f64.ln()).abs() < 1e-13);
    }
}
