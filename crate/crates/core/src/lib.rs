//! Threshold strategies for the secretary problem when the arrival order is
//! drawn from a Mallows(q) distribution.
//!
//! Ranks run from 1 (lowest) to `n` (highest); a [`Permutation`] lists the
//! rank of each arriving item in arrival order. With `q < 1` high ranks tend
//! to arrive late.
//!
//! The crate provides:
//!
//! - [`mallows`]: the Mallows model, its exact pmf and an exact online sampler.
//! - [`policy`]: the threshold strategy `S(n, m)`, its closed-form success
//!   probability and an O(n) optimal-threshold scan.
//! - [`asymptotics`]: limiting thresholds and success probabilities in the
//!   weak (`q = 1 - c/n`), moderate (`q = 1 - c/n^alpha`) and strong (fixed
//!   `q`) bias regimes, plus the weak-regime inversion limit `I(c)`.
//! - [`montecarlo`]: seeded, parallel simulation used as an independent
//!   oracle for the closed forms.
//! - [`cli`]: the `secretary` command-line front end.

pub mod asymptotics;
pub mod cli;
mod error;
pub mod mallows;
pub mod montecarlo;
pub mod numeric;
pub mod permutation;
pub mod policy;
pub mod quadrature;

pub use asymptotics::{Prediction, RegimeSpec};
pub use error::{Error, Result};
pub use mallows::MallowsModel;
pub use montecarlo::EstimateReport;
pub use permutation::Permutation;
pub use policy::{OptimalThreshold, Outcome, SuccessProbability, ThresholdStrategy};
