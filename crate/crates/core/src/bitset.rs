//! Fixed-width bitsets over the elements of one group.
//!
//! Every subgroup, conjugacy class, centralizer and vertex set in this crate
//! is an [`ElemSet`]: a bitmask over the dense element ids `0..n` of its
//! parent group. Membership is O(1) and the closure loops that dominate the
//! kernel run on whole words.

/// Subset of the elements `0..n` of a group, as a bitmask.
///
/// Bits at positions `>= n` are kept zero so that `Eq` and `Hash` work on the
/// raw words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemSet {
    n: usize,
    words: Box<[u64]>,
}

impl ElemSet {
    pub fn empty(n: usize) -> Self {
        ElemSet {
            n,
            words: vec![0u64; n.div_ceil(64)].into_boxed_slice(),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for w in s.words.iter_mut() {
            *w = !0;
        }
        s.mask_tail();
        s
    }

    pub fn singleton(n: usize, e: usize) -> Self {
        let mut s = Self::empty(n);
        s.insert(e);
        s
    }

    pub fn from_iter(n: usize, elems: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for e in elems {
            s.insert(e);
        }
        s
    }

    fn mask_tail(&mut self) {
        let tail = self.n % 64;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    /// Universe size (the parent group order), not the member count.
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, e: usize) {
        assert!(e < self.n, "element id {e} out of range 0..{}", self.n);
        self.words[e / 64] |= 1u64 << (e % 64);
    }

    pub fn remove(&mut self, e: usize) {
        assert!(e < self.n, "element id {e} out of range 0..{}", self.n);
        self.words[e / 64] &= !(1u64 << (e % 64));
    }

    pub fn contains(&self, e: usize) -> bool {
        e < self.n && self.words[e / 64] & (1u64 << (e % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &ElemSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &ElemSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &ElemSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn is_subset_of(&self, other: &ElemSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    /// Ascending iterator over member ids.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn min_member(&self) -> Option<usize> {
        self.iter().next()
    }
}

impl std::fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_len() {
        let mut s = ElemSet::empty(130);
        assert!(s.is_empty());
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.len(), 3);
        assert!(s.contains(0) && s.contains(64) && s.contains(129));
        assert!(!s.contains(1));
        assert_eq!(s.to_vec(), vec![0, 64, 129]);
        s.remove(64);
        assert_eq!(s.to_vec(), vec![0, 129]);
    }

    #[test]
    fn full_masks_tail_bits() {
        let s = ElemSet::full(70);
        assert_eq!(s.len(), 70);
        let t = ElemSet::from_iter(70, 0..70);
        assert_eq!(s, t);
    }

    #[test]
    fn set_algebra() {
        let a = ElemSet::from_iter(10, [1, 2, 3]);
        let b = ElemSet::from_iter(10, [3, 4]);
        assert_eq!(a.union(&b).to_vec(), vec![1, 2, 3, 4]);
        assert_eq!(a.intersection(&b).to_vec(), vec![3]);
        assert!(ElemSet::from_iter(10, [1, 3]).is_subset_of(&a));
        assert!(!b.is_subset_of(&a));
    }
}
