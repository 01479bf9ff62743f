use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A subset `I` of the coordinate indices, stored as a bit mask.
///
/// Indices are 0-based in the API and 1-based in every printed or serialized
/// form, matching the usual `R^{{1,2}}` notation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CoordinateSubset(u32);

impl CoordinateSubset {
    pub const fn empty() -> Self {
        CoordinateSubset(0)
    }

    pub fn full(n: usize) -> Self {
        CoordinateSubset(if n >= 32 { u32::MAX } else { (1u32 << n) - 1 })
    }

    pub fn from_mask(mask: u32) -> Self {
        CoordinateSubset(mask)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        CoordinateSubset(indices.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    /// From 1-based indices.
    pub fn from_one_based(indices: &[usize]) -> Self {
        Self::from_indices(indices.iter().map(|&i| i - 1))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        CoordinateSubset(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        CoordinateSubset(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        CoordinateSubset(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> Self {
        Self::full(n).difference(self)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// All subsets of `{0..n-1}` in mask order.
    pub fn all(n: usize) -> impl Iterator<Item = CoordinateSubset> {
        (0..1u32 << n).map(CoordinateSubset)
    }

    /// All subsets of `self`.
    pub fn subsets(self) -> impl Iterator<Item = CoordinateSubset> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some(((cur | !full).wrapping_add(1)) & full)
            };
            Some(CoordinateSubset(cur))
        })
    }
}

impl PartialOrd for CoordinateSubset {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by size, then lexicographically on the sorted index lists.
impl Ord for CoordinateSubset {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.to_one_based().cmp(&other.to_one_based()))
    }
}

impl fmt::Debug for CoordinateSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for CoordinateSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for CoordinateSubset {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.to_one_based().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for CoordinateSubset {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let idx = Vec::<usize>::deserialize(de)?;
        if idx.iter().any(|&i| i == 0 || i > 32) {
            return Err(serde::de::Error::custom("coordinate indices are 1-based"));
        }
        Ok(CoordinateSubset::from_one_based(&idx))
    }
}
