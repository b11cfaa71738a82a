//! Exact success probability of the threshold strategy S(n, m), checked
//! against a weighted enumeration of all arrival orders for a small case.
//!
//! cargo run --example exact_probability

use secretary_mallows::mallows::MallowsModel;
use secretary_mallows::policy::{success_probability, ThresholdStrategy};
use secretary_mallows::Permutation;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for smaller in permutations(n - 1) {
        for slot in 0..=smaller.len() {
            let mut p = smaller.clone();
            p.insert(slot, n);
            out.push(p);
        }
    }
    out
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (n, q) = (6, 0.7);
    let model = MallowsModel::new(n, q)?;
    let orders: Vec<Permutation> = permutations(n)
        .into_iter()
        .map(Permutation::new)
        .collect::<Result<_, _>>()?;

    println!("n = {n}, q = {q}");
    println!("{:>3} {:>12} {:>12}", "m", "closed form", "enumeration");
    for m in 0..n {
        let strategy = ThresholdStrategy::new(n, m)?;
        let mut enumerated = 0.0;
        for p in &orders {
            if strategy.play(p)?.success {
                enumerated += model.pmf(p)?;
            }
        }
        let exact = success_probability(n, m, q)?.value;
        println!("{m:>3} {exact:>12.9} {enumerated:>12.9}");
    }

    println!();
    println!("q = 1 is the classical uniform case:");
    for m in 0..n {
        println!("  m = {m}: {:.6}", success_probability(n, m, 1.0)?.value);
    }
    Ok(())
}
