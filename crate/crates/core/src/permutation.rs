//! Permutations of ranks in arrival order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An arrival order of ranks: `entries[j]` is the rank (1 = lowest,
/// `n` = highest) of the `j`-th item to arrive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    entries: Vec<usize>,
}

impl Permutation {
    /// Validates that `entries` is a bijection on `1..=n`.
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for (pos, &v) in entries.iter().enumerate() {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "entry {v} at position {} is outside 1..={n}",
                    pos + 1
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation(format!("rank {v} appears twice")));
            }
        }
        Ok(Self { entries })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            entries: (1..=n).collect(),
        }
    }

    /// Builds the permutation produced by inserting the ranks `1, 2, ..., n`
    /// one at a time onto a line, rank `j` being placed so that exactly
    /// `offsets[j - 1]` of the previously placed ranks lie to its right.
    /// The line is then read left to right as the arrival order.
    ///
    /// `offsets[0]` belongs to rank 1 and must be 0; `offsets[j - 1] < j`.
    /// The result has exactly `offsets.iter().sum()` inversions.
    ///
    /// Runs in O(n log n): ranks are assigned to their final slots from the
    /// highest down, each one taking the appropriate free slot.
    pub fn from_insertion_offsets(offsets: &[usize]) -> Result<Self> {
        for (idx, &x) in offsets.iter().enumerate() {
            if x > idx {
                return Err(Error::InvalidPermutation(format!(
                    "rank {} cannot have {x} smaller ranks to its right",
                    idx + 1
                )));
            }
        }
        Ok(Self::place(offsets))
    }

    pub(crate) fn place(offsets: &[usize]) -> Self {
        let n = offsets.len();
        let mut free = Fenwick::filled(n);
        let mut entries = vec![0usize; n];
        for rank in (1..=n).rev() {
            // At insertion, rank j sits at 0-based index j - 1 - x among the
            // first j ranks; larger ranks only ever occupy other slots.
            let within = rank - 1 - offsets[rank - 1];
            let slot = free.find_kth(within);
            free.add(slot, -1);
            entries[slot] = rank;
        }
        Self { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.entries
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.entries
    }

    /// Number of pairs `i < j` with `entries[i] > entries[j]`, in O(n log n).
    pub fn inversion_count(&self) -> u64 {
        inversion_count(&self.entries)
    }

    /// `inverse()[v - 1]` is the arrival position (1-based) of rank `v`.
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0usize; self.len()];
        for (pos, &v) in self.entries.iter().enumerate() {
            inv[v - 1] = pos + 1;
        }
        Self { entries: inv }
    }

    /// The arrival order read back to front.
    pub fn reverse(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.reverse();
        Self { entries }
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.entries
    }
}

/// Space-separated ranks in arrival order.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.entries {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Inversion count of a sequence of values in `1..=n` (duplicates allowed,
/// equal values are not inverted).
pub fn inversion_count(values: &[usize]) -> u64 {
    let n = values.iter().copied().max().unwrap_or(0);
    let mut seen = Fenwick::new(n);
    let mut total = 0u64;
    for (i, &v) in values.iter().enumerate() {
        // earlier values strictly greater than v
        let not_greater = seen.prefix_sum(v) as u64;
        total += i as u64 - not_greater;
        seen.add(v - 1, 1);
    }
    total
}

/// Binary indexed tree over `0..len` with signed counts.
struct Fenwick {
    tree: Vec<i64>,
}

impl Fenwick {
    fn new(len: usize) -> Self {
        Self {
            tree: vec![0; len + 1],
        }
    }

    /// Every position holds 1, built in O(n).
    fn filled(len: usize) -> Self {
        let mut tree = vec![0i64; len + 1];
        for i in 1..=len {
            tree[i] += 1;
            let parent = i + (i & i.wrapping_neg());
            if parent <= len {
                tree[parent] += tree[i];
            }
        }
        Self { tree }
    }

    fn add(&mut self, pos: usize, delta: i64) {
        let mut i = pos + 1;
        while i < self.tree.len() {
            self.tree[i] += delta;
            i += i & i.wrapping_neg();
        }
    }

    /// Sum over positions `0..end`.
    fn prefix_sum(&self, end: usize) -> i64 {
        let mut i = end;
        let mut s = 0;
        while i > 0 {
            s += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        s
    }

    /// Smallest position whose prefix sum (inclusive) exceeds `k`, i.e. the
    /// `k`-th (0-based) occupied position when all counts are 0 or 1.
    fn find_kth(&self, k: usize) -> usize {
        let len = self.tree.len() - 1;
        let mut pos = 0;
        let mut remaining = k as i64;
        let mut step = if len == 0 { 0 } else { 1 << len.ilog2() };
        while step > 0 {
            let next = pos + step;
            if next <= len && self.tree[next] <= remaining {
                pos = next;
                remaining -= self.tree[next];
            }
            step >>= 1;
        }
        pos
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn brute_inversions(v: &[usize]) -> u64 {
        let mut c = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    c += 1;
                }
            }
        }
        c
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 3]).is_err());
        assert!(Permutation::new(vec![]).is_ok());
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(Permutation::identity(7).inversion_count(), 0);
        let n = 9;
        let rev: Vec<usize> = (1..=n).rev().collect();
        assert_eq!(perm(&rev).inversion_count(), (n * (n - 1) / 2) as u64);
        assert_eq!(perm(&[3, 2, 1, 4]).inversion_count(), 3);
    }

    #[test]
    fn inverse_and_reverse_examples() {
        assert_eq!(perm(&[3, 1, 2]).inverse(), perm(&[2, 3, 1]));
        assert_eq!(Permutation::identity(5).inverse(), Permutation::identity(5));
        assert_eq!(perm(&[1, 2, 3]).reverse(), perm(&[3, 2, 1]));
    }

    #[test]
    fn placement_reproduces_worked_example() {
        // X_2 = 1, X_3 = 2, X_4 = 0
        let p = Permutation::from_insertion_offsets(&[0, 1, 2, 0]).unwrap();
        assert_eq!(p, perm(&[3, 2, 1, 4]));
    }

    #[test]
    fn zero_offsets_give_identity() {
        let p = Permutation::from_insertion_offsets(&[0; 12]).unwrap();
        assert_eq!(p, Permutation::identity(12));
    }

    #[test]
    fn offsets_out_of_range_rejected() {
        assert!(Permutation::from_insertion_offsets(&[0, 2]).is_err());
        assert!(Permutation::from_insertion_offsets(&[1]).is_err());
    }

    #[test]
    fn display_is_space_separated() {
        assert_eq!(perm(&[3, 2, 1, 4]).to_string(), "3 2 1 4");
    }

    fn naive_place(offsets: &[usize]) -> Vec<usize> {
        let mut line: Vec<usize> = Vec::new();
        for (idx, &x) in offsets.iter().enumerate() {
            let at = line.len() - x;
            line.insert(at, idx + 1);
        }
        line
    }

    fn offsets_strategy() -> impl Strategy<Value = Vec<usize>> {
        (0usize..40).prop_flat_map(|n| {
            (0..n)
                .map(|j| (0..=j).boxed())
                .collect::<Vec<_>>()
        })
    }

    proptest! {
        #[test]
        fn placement_matches_list_insertion(offsets in offsets_strategy()) {
            let p = Permutation::from_insertion_offsets(&offsets).unwrap();
            prop_assert_eq!(p.as_slice(), &naive_place(&offsets)[..]);
            prop_assert_eq!(p.inversion_count(), offsets.iter().sum::<usize>() as u64);
        }

        #[test]
        fn inversion_count_matches_brute_force(v in Just((1..=30usize).collect::<Vec<_>>()).prop_shuffle()) {
            let p = Permutation::new(v.clone()).unwrap();
            prop_assert_eq!(p.inversion_count(), brute_inversions(&v));
            prop_assert_eq!(p.inverse().inversion_count(), p.inversion_count());
            let n = v.len() as u64;
            prop_assert_eq!(p.reverse().inversion_count() + p.inversion_count(), n * (n - 1) / 2);
        }
    }
}
