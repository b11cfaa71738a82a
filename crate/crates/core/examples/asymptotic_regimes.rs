//! Asymptotic predictions next to the exact finite-n optimum in the weak,
//! moderate and strong bias regimes.
//!
//! cargo run --example asymptotic_regimes

use secretary_mallows::asymptotics::{predict, weak_limit_objective, weak_threshold_fraction};
use secretary_mallows::policy::optimal_threshold;
use secretary_mallows::RegimeSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let regimes = [
        RegimeSpec::weak(1.0)?,
        RegimeSpec::weak(5.0)?,
        RegimeSpec::moderate(1.0, 0.5)?,
        RegimeSpec::moderate(2.0, 0.7)?,
        RegimeSpec::strong(0.7)?,
        RegimeSpec::strong(0.95)?,
    ];
    println!(
        "{:<28} {:>8} {:>10} {:>10} {:>10} {:>10}",
        "regime", "n", "m* pred", "m* exact", "p limit", "p* exact"
    );
    for spec in regimes {
        for n in [1_000, 10_000, 100_000] {
            let q = spec.q_for(n)?;
            let pred = predict(spec, n)?;
            let exact = optimal_threshold(n, q)?;
            println!(
                "{:<28} {n:>8} {:>10} {:>10} {:>10.6} {:>10.6}",
                format!("{spec:?}"),
                pred.m_star,
                exact.m_star,
                pred.p_limit,
                exact.p_star.value
            );
        }
    }

    println!();
    println!("weak regime: the limiting objective peaks at b*(c) with value 1/e");
    for c in [0.1, 1.0, 5.0, 20.0] {
        let b = weak_threshold_fraction(c)?;
        println!("  c = {c:>5}: b* = {b:.6}, objective(b*) = {:.12}", weak_limit_objective(b, c)?);
    }
    Ok(())
}
