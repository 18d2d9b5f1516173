//! Integer partitions with the predicates the Schur-sum models need.
//!
//! A partition is stored as its list of positive parts in weakly decreasing
//! order; the empty partition is `parts = []`. Provides:
//!
//! * `conjugate`: transpose of the Young diagram,
//! * `is_even`: every part even (the symplectic shape condition),
//! * `conjugate_is_even`: every part repeated an even number of times
//!   (the orthogonal shape condition),
//! * containment and interlacing tests used by the tableau engines.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition, validating weak decrease and positivity.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidPartition(format!(
                    "parts not weakly decreasing: {parts:?}"
                )));
            }
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!(
                "zero part in {parts:?} (drop trailing zeros)"
            )));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from parts that may carry trailing zeros
    /// (as produced by the interlacing enumerations).
    pub fn from_padded(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition::new(parts)
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of (positive) parts, often written `l(lambda)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `i`-th part with 0-based index; 0 beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Weight `|lambda|`, the number of cells.
    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Conjugate (transposed) partition `lambda'`.
    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0) as usize;
        let mut parts = Vec::with_capacity(cols);
        for j in 1..=cols as u32 {
            let count = self.parts.iter().take_while(|&&p| p >= j).count() as u32;
            parts.push(count);
        }
        Partition { parts }
    }

    /// Every part even (shape condition for the symplectic Schur sum).
    pub fn is_even(&self) -> bool {
        self.parts.iter().all(|&p| p % 2 == 0)
    }

    /// Every part repeated an even number of times, i.e. the conjugate is
    /// even (shape condition for the orthogonal Schur sum).
    pub fn conjugate_is_even(&self) -> bool {
        let mut i = 0;
        while i < self.parts.len() {
            let mut j = i;
            while j < self.parts.len() && self.parts[j] == self.parts[i] {
                j += 1;
            }
            if (j - i) % 2 != 0 {
                return false;
            }
            i = j;
        }
        true
    }

    /// `mu` contained in `self` cell-wise.
    pub fn contains(&self, mu: &Partition) -> bool {
        (0..mu.len()).all(|i| mu.part(i) <= self.part(i))
    }

    /// `self / mu` is a horizontal strip: at most one cell per column,
    /// equivalently the interlacing `self_1 >= mu_1 >= self_2 >= mu_2 >= ...`.
    pub fn horizontal_strip_over(&self, mu: &Partition) -> bool {
        if !self.contains(mu) {
            return false;
        }
        (0..self.len()).all(|i| mu.part(i) >= self.part(i + 1))
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}
