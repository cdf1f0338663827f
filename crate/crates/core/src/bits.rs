//! Small bitset types used for poset relations and order-ideal keys.

use std::hash::Hash;

/// Growable set of element labels backed by 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ElemSet {
    words: Vec<u64>,
}

impl ElemSet {
    pub fn with_capacity(n: usize) -> Self {
        ElemSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn from_iter_n(n: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::with_capacity(n);
        for i in items {
            s.insert(i);
        }
        s
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        let w = i / 64;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if let Some(w) = self.words.get_mut(i / 64) {
            *w &= !(1 << (i % 64));
        }
    }

    pub fn union_with(&mut self, other: &ElemSet) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &ElemSet) {
        for (i, a) in self.words.iter_mut().enumerate() {
            *a &= other.words.get(i).copied().unwrap_or(0);
        }
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, a)| a & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + t)
            })
        })
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

/// Fixed-width bitmask used as a hash key by the ideal dynamic program.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mask<const W: usize>(pub [u64; W]);

impl<const W: usize> Mask<W> {
    pub const EMPTY: Self = Mask([0; W]);

    pub fn from_set(s: &ElemSet) -> Self {
        let mut m = [0u64; W];
        for (dst, src) in m.iter_mut().zip(s.words()) {
            *dst = *src;
        }
        Mask(m)
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn with(mut self, i: usize) -> Self {
        self.0[i / 64] |= 1 << (i % 64);
        self
    }

    #[inline]
    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    #[inline]
    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

pub(crate) trait IdealKey: Copy + Eq + Hash + Send + Sync {
    fn empty() -> Self;
    fn contains(&self, i: usize) -> bool;
    fn with(self, i: usize) -> Self;
    fn is_subset(&self, other: &Self) -> bool;
    fn from_set(s: &ElemSet) -> Self;
}

impl<const W: usize> IdealKey for Mask<W> {
    fn empty() -> Self {
        Self::EMPTY
    }
    fn contains(&self, i: usize) -> bool {
        Mask::contains(self, i)
    }
    fn with(self, i: usize) -> Self {
        Mask::with(self, i)
    }
    fn is_subset(&self, other: &Self) -> bool {
        Mask::is_subset(self, other)
    }
    fn from_set(s: &ElemSet) -> Self {
        Mask::from_set(s)
    }
}
