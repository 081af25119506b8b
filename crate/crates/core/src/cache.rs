//! Memoization of two-generator subgroups and of family membership.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use dashmap::DashMap;

use crate::elements::ElementSet;
use crate::group::FiniteGroup;

/// Default memory budget for stored pair subgroups.
pub const DEFAULT_CACHE_BYTES: usize = 256 << 20;

/// Shared memo tables for one group. Racing writers may compute the same entry
/// twice; both results are identical so whichever lands is kept.
#[derive(Debug)]
pub struct PairCache {
    pairs: DashMap<(u32, u32), Arc<ElementSet>>,
    membership: DashMap<(String, u64, usize), bool>,
    budget: usize,
    used: AtomicUsize,
}

impl Default for PairCache {
    fn default() -> Self {
        Self::new(DEFAULT_CACHE_BYTES)
    }
}

impl PairCache {
    pub fn new(budget_bytes: usize) -> Self {
        PairCache { pairs: DashMap::new(), membership: DashMap::new(), budget: budget_bytes, used: AtomicUsize::new(0) }
    }

    /// `<x, y>`, keyed on the unordered pair.
    pub fn pair_subgroup(&self, g: &FiniteGroup, x: usize, y: usize) -> Arc<ElementSet> {
        let key = (x.min(y) as u32, x.max(y) as u32);
        if let Some(s) = self.pairs.get(&key) {
            return Arc::clone(&s);
        }
        let set = Arc::new(g.generated_subgroup(&[x, y]).into_set());
        let cost = set.universe() / 8 + 64;
        if self.used.fetch_add(cost, Ordering::Relaxed) + cost <= self.budget {
            self.pairs.insert(key, Arc::clone(&set));
        } else {
            self.used.fetch_sub(cost, Ordering::Relaxed);
        }
        set
    }

    /// Memoized membership of a subgroup in the family named `family`.
    pub fn membership(&self, family: &str, set: &ElementSet, compute: impl FnOnce() -> bool) -> bool {
        let key = (family.to_string(), set.digest(), set.card());
        if let Some(v) = self.membership.get(&key) {
            return *v;
        }
        let v = compute();
        self.membership.insert(key, v);
        v
    }

    pub fn stored_pairs(&self) -> usize {
        self.pairs.len()
    }

    pub fn bytes_used(&self) -> usize {
        self.used.load(Ordering::Relaxed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::sym;

    #[test]
    fn pairs_are_unordered_and_budgeted() {
        let g = sym(4, 1000).unwrap();
        let c = PairCache::new(1 << 20);
        let a = c.pair_subgroup(&g, 1, 2);
        let b = c.pair_subgroup(&g, 2, 1);
        assert_eq!(a, b);
        assert_eq!(c.stored_pairs(), 1);
        let tiny = PairCache::new(0);
        let s = tiny.pair_subgroup(&g, 1, 2);
        assert_eq!(*s, *a);
        assert_eq!(tiny.stored_pairs(), 0);
    }

    #[test]
    fn membership_memoizes() {
        let c = PairCache::default();
        let s = ElementSet::from_indices(8, [0, 3]);
        assert!(c.membership("x", &s, || true));
        assert!(c.membership("x", &s, || panic!("recomputed")));
    }
}
