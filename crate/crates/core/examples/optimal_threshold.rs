//! How the optimal number of rejections moves as the arrival bias grows.
//!
//! cargo run --example optimal_threshold

use secretary_mallows::policy::optimal_threshold;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 1000;
    println!("n = {n}");
    println!("{:>8} {:>6} {:>8} {:>10}", "q", "m*", "m*/n", "p*");
    for q in [1.0, 0.9999, 0.999, 0.995, 0.99, 0.95, 0.9, 0.7, 0.5, 0.2] {
        let o = optimal_threshold(n, q)?;
        println!(
            "{q:>8} {:>6} {:>8.4} {:>10.6}",
            o.m_star,
            o.m_star as f64 / n as f64,
            o.p_star.value
        );
    }
    Ok(())
}
