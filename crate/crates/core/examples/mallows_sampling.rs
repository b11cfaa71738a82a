//! Drawing Mallows(q) arrival orders with the insertion construction.
//!
//! cargo run --example mallows_sampling

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use secretary_mallows::{MallowsModel, Permutation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Rank j is dropped with offsets[j-1] smaller ranks to its right.
    let built = Permutation::from_insertion_offsets(&[0, 1, 2, 0])?;
    println!("offsets (0, 1, 2, 0) -> {built}  ({} inversions)", built.inversion_count());

    let model = MallowsModel::new(3, 0.5)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let draws = 200_000;
    let mut counts: BTreeMap<String, u32> = BTreeMap::new();
    for _ in 0..draws {
        *counts.entry(model.sample(&mut rng).to_string()).or_default() += 1;
    }
    println!();
    println!("n = 3, q = 0.5, {draws} draws");
    println!("{:>8} {:>10} {:>10}", "order", "empirical", "exact");
    for (order, count) in &counts {
        let ranks = order.split(' ').map(str::parse).collect::<Result<Vec<usize>, _>>()?;
        let exact = model.pmf(&Permutation::new(ranks)?)?;
        println!("{order:>8} {:>10.5} {exact:>10.5}", *count as f64 / draws as f64);
    }

    println!();
    let big = MallowsModel::new(20, 0.6)?;
    for _ in 0..3 {
        let p = big.sample(&mut rng);
        println!("{p}   inv = {}", p.inversion_count());
    }
    Ok(())
}
