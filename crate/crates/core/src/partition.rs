//! Weakly decreasing tuples of nonnegative integers.
//!
//! A [`Partition`] doubles as the exponent tuple of a finite abelian
//! `l`-group `Z/l^{c_1} + ... + Z/l^{c_d}`. Zero parts are significant: they
//! fix the ambient rank, so `(1)` and `(1, 0)` are different values.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::PartitionError;
use crate::scalar::Scalar;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(parts.iter().map(|&x| x as i64).collect()));
        }
        Ok(Self(parts))
    }

    pub fn from_signed(parts: &[i64]) -> Result<Self, PartitionError> {
        if parts.iter().any(|&x| x < 0) {
            return Err(PartitionError::NegativePart(parts.to_vec()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(parts.to_vec()));
        }
        Ok(Self(parts.iter().map(|&x| x as u32).collect()))
    }

    /// Sorts the parts into decreasing order.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn constant(value: u32, len: usize) -> Self {
        Self(vec![value; len])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Zero-based part access; positions past the end read as zero.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn first(&self) -> u32 {
        self.part(0)
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nonzero_len(&self) -> usize {
        self.0.iter().take_while(|&&x| x > 0).count()
    }

    /// Pads with zeros (or drops trailing zeros) to exactly `len` parts.
    pub fn padded(&self, len: usize) -> Result<Self, PartitionError> {
        if self.nonzero_len() > len {
            return Err(PartitionError::TooManyParts { parts: self.0.clone(), len });
        }
        let mut parts = self.0.clone();
        parts.resize(len, 0);
        Ok(Self(parts))
    }

    /// Sorted merge of the two exponent tuples (the group of a direct sum).
    pub fn merge(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Self::from_unsorted(parts)
    }

    pub fn merge_all<'a>(items: impl IntoIterator<Item = &'a Partition>) -> Partition {
        Self::from_unsorted(items.into_iter().flat_map(|p| p.0.iter().copied()).collect())
    }

    /// True iff every top-`k` partial sum of `self` is at least the top-`k`
    /// partial sum of `vals` (sorted decreasingly), with equal totals.
    ///
    /// This is the Newton-above-Hodge condition written on exponent tuples.
    pub fn majorizes<S: Scalar>(&self, vals: &[S]) -> bool {
        if vals.len() != self.len() {
            return false;
        }
        let mut sorted = vals.to_vec();
        sorted.sort_by(|a, b| b.partial_cmp(a).expect("comparable scalars"));
        let mut lhs = S::zero();
        let mut rhs = S::zero();
        for (c, v) in self.0.iter().zip(sorted) {
            lhs = lhs + S::from_int(*c as i64);
            rhs = rhs + v;
            if lhs < rhs {
                return false;
            }
        }
        lhs == rhs
    }

    /// Removes one box from row `row`, re-sorting; `None` if the row is empty.
    pub fn remove_box(&self, row: usize) -> Option<Partition> {
        let v = *self.0.get(row)?;
        if v == 0 {
            return None;
        }
        let mut parts = self.0.clone();
        parts[row] -= 1;
        Some(Self::from_unsorted(parts))
    }

    /// True iff the Young diagram of `self` fits inside that of `other`.
    pub fn contained_in(&self, other: &Partition) -> bool {
        (0..self.len().max(other.len())).all(|i| self.part(i) <= other.part(i))
    }

    /// All partitions with exactly `len` parts (zeros allowed), the given
    /// sum, and first part at most `max_part`, in descending lexicographic
    /// order.
    pub fn all_with_sum(total: u32, len: usize, max_part: u32) -> Vec<Partition> {
        fn rec(remaining: u32, slots: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if slots == 0 {
                if remaining == 0 {
                    out.push(Partition(cur.clone()));
                }
                return;
            }
            // Each remaining part is at most `cap`, so the slots can hold at most slots*cap.
            if (remaining as u64) > (slots as u64) * (cap as u64) {
                return;
            }
            let hi = cap.min(remaining);
            for v in (0..=hi).rev() {
                cur.push(v);
                rec(remaining - v, slots - 1, v, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(total, len, max_part, &mut Vec::with_capacity(len), &mut out);
        out
    }

    /// All partitions with `len` parts, each at most `max_part`, any sum.
    pub fn all_bounded(len: usize, max_part: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        for total in 0..=(len as u32 * max_part) {
            out.extend(Self::all_with_sum(total, len, max_part));
        }
        out
    }
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = PartitionError;
    fn try_from(v: Vec<i64>) -> Result<Self, Self::Error> {
        Self::from_signed(&v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Sorts descending-lexicographically and removes duplicates.
pub fn normalize_set(mut items: Vec<Partition>) -> Vec<Partition> {
    items.sort_unstable_by(|a, b| b.cmp(a));
    items.dedup();
    items
}
