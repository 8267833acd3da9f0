use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest carrier any finite structure in this crate may have.
pub const MAX_CARRIER: usize = 64;

/// A set of carrier indices, stored as a 64-bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// All indices `0..n`.
    pub fn full(n: usize) -> Subset {
        debug_assert!(n <= MAX_CARRIER);
        if n == 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Subset {
        it.into_iter().fold(Subset::EMPTY, |s, i| s.with(i))
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | 1u64 << i)
    }

    #[inline]
    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1u64 << i))
    }

    #[inline]
    pub fn union(self, o: Subset) -> Subset {
        Subset(self.0 | o.0)
    }

    #[inline]
    pub fn intersection(self, o: Subset) -> Subset {
        Subset(self.0 & o.0)
    }

    #[inline]
    pub fn difference(self, o: Subset) -> Subset {
        Subset(self.0 & !o.0)
    }

    /// Complement relative to the carrier `0..n`.
    #[inline]
    pub fn complement(self, n: usize) -> Subset {
        Subset(!self.0 & Subset::full(n).0)
    }

    #[inline]
    pub fn is_subset(self, o: Subset) -> bool {
        self.0 & !o.0 == 0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> SubsetIter {
        SubsetIter(self.0)
    }

    /// Smallest member.
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// True iff every member is below `n`.
    pub fn fits(self, n: usize) -> bool {
        self.is_subset(Subset::full(n))
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

pub struct SubsetIter(u64);

impl Iterator for SubsetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

impl IntoIterator for Subset {
    type Item = usize;
    type IntoIter = SubsetIter;

    fn into_iter(self) -> SubsetIter {
        self.iter()
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        Subset::from_indices(it)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterates over all subsets of `base` (including the empty set and `base`).
pub fn subsets_of(base: Subset) -> impl Iterator<Item = Subset> {
    let b = base.0;
    let mut cur: Option<u64> = Some(0);
    std::iter::from_fn(move || {
        let s = cur?;
        cur = if s == b {
            None
        } else {
            Some((s.wrapping_sub(b)) & b)
        };
        Some(Subset(s))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumeration_counts() {
        assert_eq!(subsets_of(Subset::EMPTY).count(), 1);
        assert_eq!(subsets_of(Subset::from_indices([1, 3, 5])).count(), 8);
        assert!(subsets_of(Subset::from_indices([1, 3]))
            .all(|s| s.is_subset(Subset::from_indices([1, 3]))));
    }

    #[test]
    fn full_and_complement() {
        assert_eq!(Subset::full(0), Subset::EMPTY);
        assert_eq!(Subset::full(64).len(), 64);
        assert_eq!(
            Subset::from_indices([0, 2]).complement(4),
            Subset::from_indices([1, 3])
        );
    }
}
