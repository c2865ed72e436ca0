use std::cmp::Ordering;
use std::fmt;

use crate::perm::Permutation;

/// A set of base-set elements, stored as a 64-bit mask.
///
/// Intersection sizes are the innermost operation of the whole search, so
/// they must be a couple of machine instructions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElemSet(u64);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);
    pub const MAX_ELEMS: usize = 64;

    pub fn singleton(e: usize) -> Self {
        debug_assert!(e < Self::MAX_ELEMS);
        ElemSet(1u64 << e)
    }

    /// The set {0, 1, ..., k-1}.
    pub fn full(k: usize) -> Self {
        debug_assert!(k <= Self::MAX_ELEMS);
        if k == 64 {
            ElemSet(u64::MAX)
        } else {
            ElemSet((1u64 << k) - 1)
        }
    }

    pub fn from_elems(elems: &[usize]) -> Self {
        let mut s = Self::EMPTY;
        for &e in elems {
            s.insert(e);
        }
        s
    }

    pub fn insert(&mut self, e: usize) {
        debug_assert!(e < Self::MAX_ELEMS);
        self.0 |= 1u64 << e;
    }

    pub fn remove(&mut self, e: usize) {
        self.0 &= !(1u64 << e);
    }

    pub fn contains(self, e: usize) -> bool {
        e < Self::MAX_ELEMS && self.0 & (1u64 << e) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ElemSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElemSet(self.0 & other.0)
    }

    pub fn intersection_len(self, other: Self) -> usize {
        (self.0 & other.0).count_ones() as usize
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min_elem(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Elements in ascending order.
    pub fn iter(self) -> ElemIter {
        ElemIter(self.0)
    }

    /// The image set under a permutation of the elements.
    pub fn apply(self, p: &Permutation) -> Self {
        let mut s = Self::EMPTY;
        for e in self.iter() {
            s.insert(p.apply(e));
        }
        s
    }

    pub fn bits(self) -> u64 {
        self.0
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Self::EMPTY;
        for e in iter {
            s.insert(e);
        }
        s
    }
}

/// Sets are ordered as their ascending element sequences, so {0,3} < {1,2}
/// and a set precedes its proper supersets.
impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.0;
        let mut b = other.0;
        while a != 0 && b != 0 {
            let ea = a.trailing_zeros();
            let eb = b.trailing_zeros();
            match ea.cmp(&eb) {
                Ordering::Equal => {
                    a &= a - 1;
                    b &= b - 1;
                }
                ord => return ord,
            }
        }
        match (a, b) {
            (0, 0) => Ordering::Equal,
            (0, _) => Ordering::Less,
            _ => Ordering::Greater,
        }
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for e in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

pub struct ElemIter(u64);

impl Iterator for ElemIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let e = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(e)
        }
    }
}
