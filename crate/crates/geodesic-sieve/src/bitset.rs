//! Fixed-universe bit sets used for element sets, candidate sets and
//! forbidden arrays.

/// A set of indices below a fixed universe size, with a cached count.
///
/// Membership queries are O(1); the count equals the popcount of the
/// underlying words at all times.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    words: Vec<u64>,
    universe: usize,
    count: usize,
}

impl ElementSet {
    pub fn new(universe: usize) -> Self {
        ElementSet {
            words: vec![0; universe.div_ceil(64)],
            universe,
            count: 0,
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, iter: I) -> Self {
        let mut s = Self::new(universe);
        for i in iter {
            s.insert(i);
        }
        s
    }

    /// Full set `{0, .., universe-1}`.
    pub fn full(universe: usize) -> Self {
        let mut s = Self::new(universe);
        for i in 0..universe {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.count
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.universe);
        self.words[i / 64] >> (i % 64) & 1 != 0
    }

    /// Inserts `i`; returns true if it was not already present.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        debug_assert!(i < self.universe);
        let w = &mut self.words[i / 64];
        let bit = 1u64 << (i % 64);
        if *w & bit == 0 {
            *w |= bit;
            self.count += 1;
            true
        } else {
            false
        }
    }

    /// Removes `i`; returns true if it was present.
    #[inline]
    pub fn remove(&mut self, i: usize) -> bool {
        debug_assert!(i < self.universe);
        let w = &mut self.words[i / 64];
        let bit = 1u64 << (i % 64);
        if *w & bit != 0 {
            *w &= !bit;
            self.count -= 1;
            true
        } else {
            false
        }
    }

    pub fn clear(&mut self) {
        self.words.fill(0);
        self.count = 0;
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
        self.recount();
    }

    pub fn is_subset_of(&self, other: &ElementSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words.iter().zip(&other.words).all(|(w, o)| w & !o == 0)
    }

    pub fn intersects(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).any(|(w, o)| w & o != 0)
    }

    /// Iterates members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn recount(&mut self) {
        self.count = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }

    /// Raw words, usable as a compact hash key.
    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl std::fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_count() {
        let mut s = ElementSet::new(130);
        assert!(s.insert(0));
        assert!(s.insert(129));
        assert!(!s.insert(0));
        assert_eq!(s.len(), 2);
        assert!(s.contains(129));
        assert!(s.remove(0));
        assert!(!s.remove(0));
        assert_eq!(s.to_vec(), vec![129]);
    }

    #[test]
    fn subset_and_union() {
        let a = ElementSet::from_indices(70, [1, 3, 65]);
        let b = ElementSet::from_indices(70, [1, 2, 3, 65]);
        assert!(a.is_subset_of(&b));
        assert!(!b.is_subset_of(&a));
        let mut c = a.clone();
        c.union_with(&b);
        assert_eq!(c.to_vec(), vec![1, 2, 3, 65]);
        assert_eq!(c.len(), 4);
    }
}
