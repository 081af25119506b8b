use std::fmt;
use std::hash::{Hash, Hasher};

/// A subset of a group's elements, as a bitset over canonical element indices.
#[derive(Clone, PartialEq, Eq)]
pub struct ElementSet {
    universe: usize,
    words: Vec<u64>,
    card: usize,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet { universe, words: vec![0; universe.div_ceil(64)], card: 0 }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for i in 0..universe {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(universe: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(universe);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Size of the parent group.
    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn card(&self) -> usize {
        self.card
    }

    pub fn is_empty(&self) -> bool {
        self.card == 0
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.universe);
        self.words[i >> 6] & (1 << (i & 63)) != 0
    }

    /// Returns true if `i` was newly added.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.universe, "index {i} outside universe {}", self.universe);
        let w = &mut self.words[i >> 6];
        let mask = 1u64 << (i & 63);
        if *w & mask == 0 {
            *w |= mask;
            self.card += 1;
            true
        } else {
            false
        }
    }

    pub fn remove(&mut self, i: usize) -> bool {
        let w = &mut self.words[i >> 6];
        let mask = 1u64 << (i & 63);
        if *w & mask != 0 {
            *w &= !mask;
            self.card -= 1;
            true
        } else {
            false
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        self.zip_with(other, |a, b| a & !b)
    }

    fn zip_with(&self, other: &ElementSet, f: impl Fn(u64, u64) -> u64) -> ElementSet {
        assert_eq!(self.universe, other.universe);
        let words: Vec<u64> = self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect();
        let card = words.iter().map(|w| w.count_ones() as usize).sum();
        ElementSet { universe: self.universe, words, card }
    }

    /// A 64-bit digest of the bit pattern, used as a cache key.
    pub fn digest(&self) -> u64 {
        let mut h = rustc_hash::FxHasher::default();
        self.words.hash(&mut h);
        h.finish()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }
}

impl Hash for ElementSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.universe.hash(state);
        self.words.hash(state);
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ElementSet({}/{}: ", self.card, self.universe)?;
        f.debug_set().entries(self.iter().take(32)).finish()?;
        if self.card > 32 {
            write!(f, "..")?;
        }
        write!(f, ")")
    }
}

impl FromIterator<usize> for ElementSet {
    /// Universe is one past the largest index; prefer [`ElementSet::from_indices`].
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let v: Vec<usize> = iter.into_iter().collect();
        let universe = v.iter().max().map_or(0, |m| m + 1);
        Self::from_indices(universe, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn card_matches_popcount(idx in proptest::collection::vec(0usize..300, 0..100)) {
            let s = ElementSet::from_indices(300, idx.iter().copied());
            let mut sorted = idx.clone();
            sorted.sort();
            sorted.dedup();
            prop_assert_eq!(s.card(), sorted.len());
            prop_assert_eq!(s.to_vec(), sorted);
        }

        #[test]
        fn set_algebra(a in proptest::collection::vec(0usize..130, 0..60),
                       b in proptest::collection::vec(0usize..130, 0..60)) {
            let sa = ElementSet::from_indices(130, a);
            let sb = ElementSet::from_indices(130, b);
            let i = sa.intersection(&sb);
            let u = sa.union(&sb);
            prop_assert_eq!(i.card() + u.card(), sa.card() + sb.card());
            prop_assert!(i.is_subset(&sa) && sa.is_subset(&u));
            prop_assert_eq!(sa.difference(&sb).card(), sa.card() - i.card());
        }
    }
}
