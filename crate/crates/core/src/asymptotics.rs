//! Large-`n` behaviour of the optimal threshold in the three bias regimes.
//!
//! | regime   | `q_n`            | optimal threshold            | limit            |
//! |----------|------------------|------------------------------|------------------|
//! | weak     | `1 - c/n`        | `m* ~ b*(c) n`               | `1/e`            |
//! | moderate | `1 - c/n^alpha`  | `n - m* ~ n^alpha / c`       | `1/e`            |
//! | strong   | fixed `q`        | `m* = n - L(q)`              | `(1-q) q^(L-1) L`|
//!
//! Predicted thresholds are rounded half-to-even.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric;
use crate::quadrature::{self, Tolerance};

const INV_E: f64 = 0.367_879_441_171_442_3;

/// Bias regime and its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "regime", rename_all = "lowercase")]
pub enum RegimeSpec {
    /// `q_n = 1 - c/n`.
    Weak { c: f64 },
    /// `q_n = 1 - c/n^alpha`, `0 < alpha < 1`.
    Moderate { c: f64, alpha: f64 },
    /// Fixed `q` in `(0, 1)`.
    Strong { q: f64 },
}

impl RegimeSpec {
    pub fn weak(c: f64) -> Result<Self> {
        check_c(c)?;
        Ok(RegimeSpec::Weak { c })
    }

    pub fn moderate(c: f64, alpha: f64) -> Result<Self> {
        check_c(c)?;
        check_alpha(alpha)?;
        Ok(RegimeSpec::Moderate { c, alpha })
    }

    pub fn strong(q: f64) -> Result<Self> {
        check_open_q(q)?;
        Ok(RegimeSpec::Strong { q })
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            RegimeSpec::Weak { c } => check_c(c),
            RegimeSpec::Moderate { c, alpha } => check_c(c).and(check_alpha(alpha)),
            RegimeSpec::Strong { q } => check_open_q(q),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            RegimeSpec::Weak { .. } => "weak",
            RegimeSpec::Moderate { .. } => "moderate",
            RegimeSpec::Strong { .. } => "strong",
        }
    }

    /// The Mallows parameter `q_n` this regime assigns to size `n`.
    pub fn q_for(&self, n: usize) -> Result<f64> {
        self.validate()?;
        let nf = n as f64;
        let q = match *self {
            RegimeSpec::Weak { c } => 1.0 - c / nf,
            RegimeSpec::Moderate { c, alpha } => 1.0 - c * nf.powf(-alpha),
            RegimeSpec::Strong { q } => q,
        };
        if q > 0.0 && q < 1.0 {
            Ok(q)
        } else {
            Err(Error::domain("q_n", q, "regime parameters must give 0 < q_n < 1"))
        }
    }
}

fn check_c(c: f64) -> Result<()> {
    if c > 0.0 && c.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("c", c, "c > 0"))
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::domain("alpha", alpha, "0 < alpha < 1"))
    }
}

fn check_open_q(q: f64) -> Result<()> {
    if q > 0.0 && q < 1.0 {
        Ok(())
    } else {
        Err(Error::domain("q", q, "0 < q < 1"))
    }
}

/// Limiting optimal rejected fraction in the weak regime,
/// `b*(c) = (1/c) ln(1 + (e^c - 1)/e)`.
///
/// Tends to `1/e` as `c -> 0` and to `1` as `c -> inf`.
pub fn weak_threshold_fraction(c: f64) -> Result<f64> {
    check_c(c)?;
    if c <= 1.0 {
        Ok((c.exp_m1() / std::f64::consts::E).ln_1p() / c)
    } else {
        // 1 + (e^c - 1)/e = e^(c-1) (1 + (e - 1) e^-c)
        let tail = ((std::f64::consts::E - 1.0) * (-c).exp()).ln_1p();
        Ok(1.0 - 1.0 / c + tail / c)
    }
}

/// Limiting success probability in the weak regime when `m ~ b n`:
///
/// ```text
/// c e^-c (e^(bc) - 1) / (1 - e^-c) * (1 - b + (1/c) ln[(1 - e^-c) / (1 - e^-bc)])
/// ```
///
/// Vanishes at both ends of `(0, 1)` and peaks at `b*(c)` with value `1/e`.
pub fn weak_limit_objective(b: f64, c: f64) -> Result<f64> {
    check_c(c)?;
    if !(b > 0.0 && b < 1.0) {
        return Err(Error::domain("b", b, "0 < b < 1"));
    }
    // e^-c (e^bc - 1) = e^-(1-b)c (1 - e^-bc)
    let one_minus_exp_bc = -(-b * c).exp_m1();
    let one_minus_exp_c = -(-c).exp_m1();
    let prefactor = c * (-(1.0 - b) * c).exp() * one_minus_exp_bc / one_minus_exp_c;
    let integral = 1.0 - b
        + (numeric::ln_one_minus_exp(-c) - numeric::ln_one_minus_exp(-b * c)) / c;
    Ok(prefactor * integral)
}

/// `L_n* = -1 / ln(1 - c n^-alpha)`, the maximizer of `(1 - c/n^alpha)^L L`.
/// Asymptotically `n^alpha / c`.
pub fn moderate_window(n: usize, alpha: f64, c: f64) -> Result<f64> {
    check_c(c)?;
    check_alpha(alpha)?;
    let x = c * (n as f64).powf(-alpha);
    if x >= 1.0 || x.is_nan() {
        return Err(Error::domain("c * n^-alpha", x, "c * n^-alpha < 1"));
    }
    Ok(-1.0 / (-x).ln_1p())
}

/// The window size `L >= 1` with `(L-1)/L < q <= L/(L+1)`.
///
/// Starts from `ceil(q / (1 - q))` and then settles the boundaries by
/// comparing `q` against the floating-point values of `L/(L+1)` directly,
/// so `q = L as f64 / (L + 1) as f64` always classifies as `L` (for example
/// `2.0 / 3.0 = 0.6666666666666666` gives `L = 2`).
pub fn strong_window(q: f64) -> Result<usize> {
    check_open_q(q)?;
    let mut l = ((q / (1.0 - q)).ceil() as usize).max(1);
    let upper = |l: usize| l as f64 / (l + 1) as f64;
    while q > upper(l) {
        l += 1;
    }
    while l > 1 && q <= upper(l - 1) {
        l -= 1;
    }
    Ok(l)
}

/// `(1 - q) q^(L-1) L` with `L = strong_window(q)`; equals `1 - q` for
/// `q <= 1/2` and exceeds `1/e` everywhere in `(0, 1)`.
pub fn strong_limit_probability(q: f64) -> Result<f64> {
    let l = strong_window(q)?;
    Ok((1.0 - q) * q.powi(l as i32 - 1) * l as f64)
}

/// `g(t) = 1 - t / (e^t - 1)`, with its Taylor series near zero.
fn inversion_integrand(t: f64) -> f64 {
    if t < 0.05 {
        let t2 = t * t;
        // t/(e^t - 1) = 1 - t/2 + t^2/12 - t^4/720 + t^6/30240 - ...
        t / 2.0 - t2 / 12.0 + t2 * t2 / 720.0 - t2 * t2 * t2 / 30240.0
    } else {
        1.0 - t / t.exp_m1()
    }
}

/// Weak-regime limit of `E[inv] / n^2`:
///
/// ```text
/// I(c) = (1/c^2) int_0^{1-e^-c} [1/(1-x) + ln(1-x)/x] dx
/// ```
///
/// Evaluated after substituting `x = 1 - e^(-cs)`, which turns the integrand
/// into the bounded `(1/c) g(cs)` on `s in [0, 1]` (see
/// [`inversion_integrand`]); both endpoint singularities disappear.
/// Absolute tolerance 1e-10.
pub fn inversion_limit_weak(c: f64) -> Result<f64> {
    check_c(c)?;
    let tol = Tolerance::default();
    let r = quadrature::integrate(|s| inversion_integrand(c * s), 0.0, 1.0, Tolerance {
        absolute: tol.absolute * c,
        ..tol
    })?;
    Ok(r.value / c)
}

/// Asymptotic prediction for size `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Prediction {
    pub m_star: usize,
    pub p_limit: f64,
}

/// Predicted optimal threshold and limiting success probability.
///
/// - weak: `(round(n b*(c)), 1/e)`
/// - moderate: `(n - round(L_n*), 1/e)`
/// - strong: `(n - L(q), (1-q) q^(L-1) L)`
///
/// The threshold is clamped to `0..=n-1`.
pub fn predict(spec: RegimeSpec, n: usize) -> Result<Prediction> {
    spec.validate()?;
    if n == 0 {
        return Err(Error::domain("n", 0.0, "n >= 1"));
    }
    let last = n as f64 - 1.0;
    let (m, p_limit) = match spec {
        RegimeSpec::Weak { c } => {
            let b = weak_threshold_fraction(c)?;
            ((n as f64 * b).round_ties_even(), INV_E)
        }
        RegimeSpec::Moderate { c, alpha } => {
            let l = moderate_window(n, alpha, c)?;
            (n as f64 - l.round_ties_even(), INV_E)
        }
        RegimeSpec::Strong { q } => {
            let l = strong_window(q)?;
            (n as f64 - l as f64, strong_limit_probability(q)?)
        }
    };
    Ok(Prediction {
        m_star: m.clamp(0.0, last) as usize,
        p_limit,
    })
}
