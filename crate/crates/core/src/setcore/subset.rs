use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

/// Largest ground set supported by full rank tables.
pub const MAX_GROUND: usize = 20;

/// A subset of a ground set, stored as a bitmask. Bit `i` stands for the
/// element with index `i` in the owning [`GroundSet`](super::GroundSet).
///
/// The `Ord` implementation is the canonical order used everywhere for
/// iteration and tie-breaking: by cardinality first, then by mask value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_GROUND);
        Subset(((1u64 << n) - 1) as u32)
    }

    #[inline]
    pub fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Subset(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_proper_subset_of(self, other: Subset) -> bool {
        self != other && self.is_subset_of(other)
    }

    /// True when neither set contains the other.
    #[inline]
    pub fn is_incomparable(self, other: Subset) -> bool {
        !self.is_subset_of(other) && !other.is_subset_of(self)
    }

    #[inline]
    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | (1 << i))
    }

    #[inline]
    pub fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1 << i))
    }

    /// Element indices in increasing order.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    /// All subsets of `self`, in increasing mask order (not canonical order).
    pub fn subsets(self) -> Submasks {
        Submasks {
            set: self.0,
            next: Some(0),
        }
    }

    pub fn lowest(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BitOr for Subset {
    type Output = Subset;
    fn bitor(self, rhs: Subset) -> Subset {
        Subset(self.0 | rhs.0)
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    fn bitand(self, rhs: Subset) -> Subset {
        Subset(self.0 & rhs.0)
    }
}

impl Sub for Subset {
    type Output = Subset;
    fn sub(self, rhs: Subset) -> Subset {
        Subset(self.0 & !rhs.0)
    }
}

impl Not for Subset {
    type Output = Subset;
    fn not(self) -> Subset {
        Subset(!self.0)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.elements().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

pub struct Elements(u32);

impl Iterator for Elements {
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

impl ExactSizeIterator for Elements {}

/// Carry-ripple enumeration of the submasks of a fixed mask.
pub struct Submasks {
    set: u32,
    next: Option<u32>,
}

impl Iterator for Submasks {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == self.set {
            None
        } else {
            Some((cur.wrapping_sub(self.set)) & self.set)
        };
        Some(Subset(cur))
    }
}

/// Every subset of an `n`-element ground set, in canonical order.
pub fn canonical_subsets(n: usize) -> Vec<Subset> {
    let mut all: Vec<Subset> = (0..1u32 << n).map(Subset).collect();
    all.sort();
    all
}
