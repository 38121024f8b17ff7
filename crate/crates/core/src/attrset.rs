use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use crate::error::{Error, Result};

/// Bitmask over conditional-attribute indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AttributeSet(u128);

impl AttributeSet {
    pub const CAPACITY: usize = 128;

    pub const fn empty() -> Self {
        AttributeSet(0)
    }

    /// `{0, 1, …, n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= Self::CAPACITY, "attribute set capacity is {}", Self::CAPACITY);
        if n == Self::CAPACITY {
            AttributeSet(u128::MAX)
        } else {
            AttributeSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(index: usize) -> Self {
        assert!(index < Self::CAPACITY);
        AttributeSet(1u128 << index)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices.into_iter().fold(Self::empty(), |s, i| s.with(i))
    }

    pub const fn from_bits(bits: u128) -> Self {
        AttributeSet(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    pub fn contains(self, index: usize) -> bool {
        index < Self::CAPACITY && self.0 >> index & 1 == 1
    }

    pub fn insert(&mut self, index: usize) {
        assert!(index < Self::CAPACITY);
        self.0 |= 1u128 << index;
    }

    pub fn remove(&mut self, index: usize) {
        if index < Self::CAPACITY {
            self.0 &= !(1u128 << index);
        }
    }

    #[must_use]
    pub fn with(mut self, index: usize) -> Self {
        self.insert(index);
        self
    }

    #[must_use]
    pub fn without(mut self, index: usize) -> Self {
        self.remove(index);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        AttributeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        AttributeSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        AttributeSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest index + 1, or 0 for the empty set.
    pub fn span(self) -> usize {
        Self::CAPACITY - self.0.leading_zeros() as usize
    }

    /// Errors when some member is not below `len`.
    pub fn check_within(self, len: usize) -> Result<()> {
        match self.span() {
            s if s > len => Err(Error::AttributeOutOfRange { index: s - 1, len }),
            _ => Ok(()),
        }
    }

    /// Members in ascending order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }
}

pub struct Iter(u128);

impl Iterator for Iter {
    type Item = usize;

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

impl IntoIterator for AttributeSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<usize> for AttributeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_indices(iter)
    }
}

impl BitOr for AttributeSet {
    type Output = Self;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl BitAnd for AttributeSet {
    type Output = Self;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

impl Sub for AttributeSet {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.difference(rhs)
    }
}

impl fmt::Debug for AttributeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basics() {
        let s = AttributeSet::from_indices([0, 5, 127]);
        assert_eq!(s.len(), 3);
        assert!(s.contains(127));
        assert!(!s.contains(128));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 5, 127]);
        assert_eq!(s.span(), 128);
        assert_eq!(AttributeSet::full(16).len(), 16);
        assert_eq!(AttributeSet::full(128).len(), 128);
        assert!(AttributeSet::empty().is_empty());
        assert!(AttributeSet::from_indices([3]).check_within(3).is_err());
        assert!(AttributeSet::from_indices([2]).check_within(3).is_ok());
    }

    proptest! {
        #[test]
        fn algebra_matches_btreeset(a in any::<u128>(), b in any::<u128>()) {
            use std::collections::BTreeSet;
            let (x, y) = (AttributeSet::from_bits(a), AttributeSet::from_bits(b));
            let xs: BTreeSet<usize> = x.iter().collect();
            let ys: BTreeSet<usize> = y.iter().collect();
            prop_assert_eq!((x | y).iter().collect::<BTreeSet<_>>(), &xs | &ys);
            prop_assert_eq!((x & y).iter().collect::<BTreeSet<_>>(), &xs & &ys);
            prop_assert_eq!((x - y).iter().collect::<BTreeSet<_>>(), &xs - &ys);
            prop_assert_eq!(x.is_subset(y), xs.is_subset(&ys));
        }
    }
}
