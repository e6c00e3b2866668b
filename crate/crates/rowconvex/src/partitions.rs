//! Integer partitions and their orderings.
//!
//! A partition stores the multiset of row lengths of a stack of rows; a
//! composition fixes the vertical order of those rows (bottom row first).
//! Partitions stream in decreasing lexicographic order, and the distinct
//! orderings of one partition stream in decreasing lexicographic order as
//! well, starting from the sorted arrangement itself.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

/// Partition of a positive integer: parts are positive and non-increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidArgument(
                "partition needs at least one part".into(),
            ));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidArgument("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(
                "partition parts must be non-increasing".into(),
            ));
        }
        Ok(Self { parts })
    }

    fn from_sorted_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(!parts.is_empty());
        debug_assert!(!parts.contains(&0));
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Self { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The partitioned integer (sum of all parts).
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    /// Multiplicity of each distinct part value.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// Streams every distinct ordering of the parts, duplicate-free, in
    /// decreasing lexicographic order. The first item is the partition itself.
    pub fn distinct_permutations(&self) -> DistinctPermutations {
        DistinctPermutations {
            current: Some(self.parts.clone()),
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Composition of a positive integer: an ordered sequence of positive parts.
/// Read as row lengths from the bottom row up.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidArgument(
                "composition needs at least one part".into(),
            ));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(
                "composition parts must be positive".into(),
            ));
        }
        Ok(Self { parts })
    }

    fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(!parts.is_empty());
        debug_assert!(!parts.contains(&0));
        Self { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Forgets the order: sorts the parts into the underlying partition.
    pub fn to_partition(&self) -> Partition {
        let mut parts = self.parts.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_sorted_unchecked(parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Streams every partition of `n` in decreasing lexicographic order,
/// starting with the single-part partition `(n)`.
pub fn generate_partitions(n: usize) -> Result<PartitionIter> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "cannot partition 0: no positive parts sum to it".into(),
        ));
    }
    Ok(PartitionIter {
        current: Some(vec![n]),
    })
}

pub struct PartitionIter {
    current: Option<Vec<usize>>,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        self.current = next_partition(&cur);
        Some(Partition::from_sorted_unchecked(cur))
    }
}

/// Successor in decreasing lexicographic order: shrink the rightmost part
/// that exceeds 1, then redistribute everything after it greedily under the
/// new bound.
fn next_partition(cur: &[usize]) -> Option<Vec<usize>> {
    let i = cur.iter().rposition(|&p| p > 1)?;
    let bound = cur[i] - 1;
    let mut rest = cur[i] + (cur.len() - i - 1);
    let mut next = cur[..i].to_vec();
    while rest > 0 {
        let part = bound.min(rest);
        next.push(part);
        rest -= part;
    }
    Some(next)
}

pub struct DistinctPermutations {
    current: Option<Vec<usize>>,
}

impl Iterator for DistinctPermutations {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let cur = self.current.as_mut()?;
        let item = cur.clone();
        if !prev_permutation(cur) {
            self.current = None;
        }
        Some(Composition::from_parts_unchecked(item))
    }
}

/// Rearranges `a` into its predecessor in lexicographic order. Multiset-aware:
/// repeated values are never revisited. Returns false at the minimum (sorted
/// ascending) arrangement.
fn prev_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let Some(i) = (0..a.len() - 1).rfind(|&i| a[i] > a[i + 1]) else {
        return false;
    };
    let j = (i + 1..a.len()).rfind(|&j| a[j] < a[i]).unwrap();
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// Number of distinct orderings of the parts: `l! / prod(m_v!)` over the
/// multiplicities `m_v` of each distinct value (1 when all parts are equal).
pub fn permutation_factor(p: &Partition) -> BigInt {
    let mut f = factorial(p.part_count());
    for (_, m) in p.multiplicities() {
        f /= factorial(m);
    }
    f
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Counts the partitions of `n` by exhausting the generator. Diagnostic use
/// only; cost grows like the partition function itself.
pub fn partition_count(n: usize) -> Result<u64> {
    Ok(generate_partitions(n)?.count() as u64)
}
