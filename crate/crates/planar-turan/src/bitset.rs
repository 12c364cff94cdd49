//! Fixed-universe vertex sets backed by word bitsets.
//!
//! Sets over `0..n` stay inline in a single `u64` for `n <= 64` and spill to a
//! heap-allocated word vector beyond that. All binary operations assume both
//! operands share the same universe.

use smallvec::{smallvec, SmallVec};

const WORD_BITS: usize = 64;

/// A set of vertex labels drawn from a fixed universe `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    words: SmallVec<[u64; 1]>,
}

impl VertexSet {
    /// Empty set over the universe `0..n`.
    pub fn with_universe(n: usize) -> Self {
        let len = n.div_ceil(WORD_BITS).max(1);
        VertexSet {
            words: smallvec![0u64; len],
        }
    }

    pub fn insert(&mut self, v: usize) {
        self.words[v / WORD_BITS] |= 1u64 << (v % WORD_BITS);
    }

    pub fn remove(&mut self, v: usize) {
        self.words[v / WORD_BITS] &= !(1u64 << (v % WORD_BITS));
    }

    pub fn contains(&self, v: usize) -> bool {
        match self.words.get(v / WORD_BITS) {
            Some(w) => (w >> (v % WORD_BITS)) & 1 == 1,
            None => false,
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn clear(&mut self) {
        self.words.fill(0);
    }

    /// Smallest element, if any.
    pub fn first(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.words.len(), other.words.len());
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.words.len(), other.words.len());
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn subtract(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.words.len(), other.words.len());
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersection_count(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// First word; the whole set when the universe has at most 64 elements.
    pub fn word0(&self) -> u64 {
        self.words[0]
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(i * WORD_BITS + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    /// Collects into the smallest universe containing all elements.
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let items: Vec<usize> = iter.into_iter().collect();
        let n = items.iter().map(|&v| v + 1).max().unwrap_or(0);
        let mut set = VertexSet::with_universe(n);
        for v in items {
            set.insert(v);
        }
        set
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_contains() {
        let mut s = VertexSet::with_universe(100);
        s.insert(0);
        s.insert(63);
        s.insert(64);
        s.insert(99);
        assert!(s.contains(0) && s.contains(63) && s.contains(64) && s.contains(99));
        assert_eq!(s.count(), 4);
        s.remove(64);
        assert!(!s.contains(64));
        assert_eq!(s.to_vec(), vec![0, 63, 99]);
    }

    #[test]
    fn set_algebra() {
        let mut a = VertexSet::with_universe(70);
        let mut b = VertexSet::with_universe(70);
        for v in [1, 3, 5, 65] {
            a.insert(v);
        }
        for v in [3, 5, 7, 69] {
            b.insert(v);
        }
        assert_eq!(a.intersection_count(&b), 2);
        assert!(!a.is_disjoint(&b));
        let mut u = a.clone();
        u.union_with(&b);
        assert_eq!(u.count(), 6);
        let mut d = a.clone();
        d.subtract(&b);
        assert_eq!(d.to_vec(), vec![1, 65]);
        assert!(d.is_subset(&a));
    }

    #[test]
    fn empty_universe() {
        let s = VertexSet::with_universe(0);
        assert!(s.is_empty());
        assert_eq!(s.first(), None);
    }
}
