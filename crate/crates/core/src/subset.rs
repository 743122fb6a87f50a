use std::cmp::Ordering;
use std::fmt;

/// Largest carrier a [`Subset`] can index.
pub const MAX_ELEMENTS: usize = 64;

/// A set of element indices of some poset, stored as a 64-bit mask.
///
/// Ordering is canonical rather than numeric: smaller sets first, and sets of
/// equal size compare by their sorted index sequences. Families of subsets are
/// kept in this order so that reports and witnesses are reproducible.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_ELEMENTS);
        Subset(1u64 << i)
    }

    /// The set `{0, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        if n == MAX_ELEMENTS {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(Subset::EMPTY, |acc, i| acc.with(i))
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < MAX_ELEMENTS && self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    #[inline]
    #[must_use]
    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | 1u64 << i)
    }

    #[inline]
    #[must_use]
    pub fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1u64 << i))
    }

    #[inline]
    #[must_use]
    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    #[inline]
    #[must_use]
    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    #[inline]
    #[must_use]
    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Smallest index in the set.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest index in the set.
    #[inline]
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    #[inline]
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// All subsets of `self`, including `∅` and `self`, in increasing mask order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & diff & diff.wrapping_neg() != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Subset::from_indices(iter)
    }
}

impl IntoIterator for Subset {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

/// Ascending iterator over the indices of a [`Subset`].
#[derive(Clone, Debug)]
pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

/// All `k`-element subsets of `{0, .., n-1}` in increasing mask order.
pub fn k_subsets(n: usize, k: usize) -> KSubsets {
    debug_assert!(n <= MAX_ELEMENTS);
    let next = if k > n {
        None
    } else if k == 0 {
        Some(0)
    } else {
        Some(Subset::full(k).bits())
    };
    KSubsets {
        limit: Subset::full(n).bits(),
        next,
    }
}

#[derive(Clone, Debug)]
pub struct KSubsets {
    limit: u64,
    next: Option<u64>,
}

impl Iterator for KSubsets {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let low = cur & cur.wrapping_neg();
            let ripple = cur.wrapping_add(low);
            if ripple == 0 {
                None
            } else {
                let next = (((ripple ^ cur) >> 2) / low) | ripple;
                (next & !self.limit == 0).then_some(next)
            }
        };
        Some(Subset(cur))
    }
}

/// Iterator over all submasks of a mask.
#[derive(Clone, Debug)]
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            // next submask in increasing numeric order
            Some((cur.wrapping_sub(self.mask)) & self.mask)
        };
        Some(Subset(cur))
    }
}
