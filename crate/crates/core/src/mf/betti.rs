use std::collections::BTreeMap;
use std::fmt;

use crate::graded::DegreeMultiset;

/// Finitely supported counts `b^i_j`, `i ∈ {0, 1}`: the number of degree-`j`
/// generators of `F^i`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiTable {
    counts: BTreeMap<(u8, i64), u64>,
}

impl BettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_degrees(f0: &DegreeMultiset, f1: &DegreeMultiset) -> Self {
        let mut t = BettiTable::new();
        for (i, degs) in [(0u8, f0), (1u8, f1)] {
            for (j, count) in degs.multiplicities() {
                t.add(i, j, count as u64);
            }
        }
        t
    }

    /// Adds `count` to `b^i_j`. Panics unless `i` is 0 or 1.
    pub fn add(&mut self, i: u8, j: i64, count: u64) {
        assert!(i <= 1, "Betti index i must be 0 or 1");
        if count > 0 {
            *self.counts.entry((i, j)).or_insert(0) += count;
        }
    }

    pub fn get(&self, i: u8, j: i64) -> u64 {
        self.counts.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries as `((i, j), b^i_j)`, ordered by `(i, j)`.
    pub fn iter(&self) -> impl Iterator<Item = ((u8, i64), u64)> + '_ {
        self.counts.iter().map(|(&k, &v)| (k, v))
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn row_total(&self, i: u8) -> u64 {
        self.iter().filter(|((k, _), _)| *k == i).map(|(_, v)| v).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("(empty)");
        }
        let parts: Vec<String> = self.iter().map(|((i, j), v)| format!("b{i}_{j} = {v}")).collect();
        f.write_str(&parts.join(", "))
    }
}
