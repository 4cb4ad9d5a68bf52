use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest supported ground set; a dense table has `2^16` entries.
pub const MAX_GROUND_SIZE: usize = 16;

/// A finite ground set `{0, .., n-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_GROUND_SIZE {
            return Err(Error::GroundSize(n));
        }
        Ok(GroundSet { n })
    }

    pub fn size(self) -> usize {
        self.n
    }

    /// Number of subsets, `2^n`.
    pub fn num_subsets(self) -> usize {
        1 << self.n
    }

    pub fn full(self) -> SubsetMask {
        SubsetMask(((1u64 << self.n) - 1) as u32)
    }

    pub fn contains(self, mask: SubsetMask) -> bool {
        mask.0 & !self.full().0 == 0
    }

    pub fn check(self, mask: SubsetMask) -> Result<()> {
        if self.contains(mask) {
            Ok(())
        } else {
            Err(Error::MaskOutOfRange {
                mask: mask.0,
                n: self.n,
            })
        }
    }

    /// All subsets in increasing mask order.
    pub fn subsets(self) -> impl DoubleEndedIterator<Item = SubsetMask> + Clone {
        (0..self.num_subsets() as u32).map(SubsetMask)
    }

    pub fn complement(self, mask: SubsetMask) -> SubsetMask {
        SubsetMask(self.full().0 & !mask.0)
    }
}

/// A subset of the ground set encoded as a bitmask; bit `i` set means `i` is in the set.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn singleton(i: usize) -> Self {
        SubsetMask(1 << i)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        SubsetMask(elements.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        SubsetMask(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        SubsetMask(self.0 & !(1 << i))
    }

    pub fn union(self, other: Self) -> Self {
        SubsetMask(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        SubsetMask(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    /// Elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, in increasing mask order.
    pub fn subsets(self) -> impl Iterator<Item = SubsetMask> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(SubsetMask(cur))
        })
    }
}

impl BitOr for SubsetMask {
    type Output = SubsetMask;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl BitAnd for SubsetMask {
    type Output = SubsetMask;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

impl Sub for SubsetMask {
    type Output = SubsetMask;
    fn sub(self, rhs: Self) -> Self {
        self.difference(rhs)
    }
}

impl fmt::Display for SubsetMask {
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

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A partition of the ground set into nonempty, pairwise-disjoint classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    ground: GroundSet,
    classes: Vec<SubsetMask>,
}

impl Partition {
    pub fn new(ground: GroundSet, classes: Vec<SubsetMask>) -> Result<Self> {
        let mut seen = SubsetMask::EMPTY;
        for &c in &classes {
            ground.check(c)?;
            if c.is_empty() {
                return Err(Error::InvalidPartition("empty class".into()));
            }
            if c.intersects(seen) {
                return Err(Error::InvalidPartition(format!(
                    "class {c} overlaps another"
                )));
            }
            seen = seen | c;
        }
        if seen != ground.full() {
            return Err(Error::InvalidPartition(format!(
                "classes miss {}",
                ground.complement(seen)
            )));
        }
        if classes.len() > MAX_GROUND_SIZE {
            return Err(Error::GroundSize(classes.len()));
        }
        Ok(Partition { ground, classes })
    }

    pub fn singletons(ground: GroundSet) -> Self {
        Partition {
            ground,
            classes: (0..ground.size()).map(SubsetMask::singleton).collect(),
        }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn classes(&self) -> &[SubsetMask] {
        &self.classes
    }

    /// Number of classes.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Union of the classes indexed by `selection`.
    pub fn expand(&self, selection: SubsetMask) -> SubsetMask {
        selection
            .elements()
            .fold(SubsetMask::EMPTY, |acc, i| acc | self.classes[i])
    }
}
