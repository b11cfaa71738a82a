//! Mean number of inversions of Mallows draws in each bias regime, against
//! the known large-n limits.
//!
//! cargo run --release --example inversion_statistics

use secretary_mallows::asymptotics::inversion_limit_weak;
use secretary_mallows::montecarlo::estimate_inversion_moment;
use secretary_mallows::RegimeSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let samples = 200;
    let n = 5_000;

    println!("strong (fixed q): E[inv]/n -> q/(1-q)");
    for q in [0.3, 0.5, 0.8] {
        let r = estimate_inversion_moment(n, q, samples, 1.0, 1, 4)?;
        println!("  q = {q}: {:.4} ± {:.4}  (limit {:.4})", r.estimate, r.std_error, q / (1.0 - q));
    }

    println!("moderate (q = 1 - c/n^alpha): E[inv]/n^(1+alpha) -> 1/c");
    for (c, alpha) in [(1.0, 0.5), (2.0, 0.5), (1.0, 0.7)] {
        let q = RegimeSpec::moderate(c, alpha)?.q_for(n)?;
        let r = estimate_inversion_moment(n, q, samples, 1.0 + alpha, 2, 4)?;
        println!("  c = {c}, alpha = {alpha}: {:.4} ± {:.4}  (limit {:.4})", r.estimate, r.std_error, 1.0 / c);
    }

    println!("weak (q = 1 - c/n): E[inv]/n^2 -> I(c)");
    for c in [0.5, 1.0, 4.0] {
        let q = RegimeSpec::weak(c)?.q_for(n)?;
        let r = estimate_inversion_moment(n, q, samples, 2.0, 3, 4)?;
        println!("  c = {c}: {:.5} ± {:.5}  (I(c) = {:.5})", r.estimate, r.std_error, inversion_limit_weak(c)?);
    }

    let r = estimate_inversion_moment(n, 1.0, samples, 2.0, 4, 4)?;
    println!("uniform: E[inv]/n^2 = {:.5} ± {:.5}  (limit 0.25)", r.estimate, r.std_error);
    Ok(())
}
