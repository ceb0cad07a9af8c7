//! Integer partitions and charge vectors.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{CrystalError, Result};

/// A weakly decreasing sequence of positive integers; zero parts are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Accepts a weakly decreasing sequence of non-negative integers; trailing zeros are dropped.
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.iter().any(|&p| p < 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(CrystalError::NotAPartition(parts));
        }
        if parts.iter().any(|&p| p > u32::MAX as i64) {
            return Err(CrystalError::NotAPartition(parts));
        }
        Ok(Partition(
            parts
                .into_iter()
                .filter(|&p| p > 0)
                .map(|p| p as u32)
                .collect(),
        ))
    }

    /// Sorts the input into decreasing order before validating.
    pub fn from_unsorted(mut parts: Vec<i64>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// The k-th part, 1-indexed, with zero beyond the length.
    pub fn part(&self, k: usize) -> u32 {
        if k == 0 {
            return 0;
        }
        self.0.get(k - 1).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn transpose(&self) -> Partition {
        let first = self.part(1) as usize;
        let parts = (1..=first)
            .map(|c| self.0.iter().filter(|&&p| p as usize >= c).count() as u32)
            .collect();
        Partition(parts)
    }

    /// Distinct nonzero parts with their multiplicities, largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, a)) if *q == p => *a += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Adds one box in row k (1-indexed) when the result is a partition.
    pub fn add_box(&self, k: usize) -> Option<Partition> {
        if k == 0 || k > self.len() + 1 {
            return None;
        }
        if k > 1 && self.part(k - 1) == self.part(k) {
            return None;
        }
        let mut v = self.0.clone();
        if k == v.len() + 1 {
            v.push(1);
        } else {
            v[k - 1] += 1;
        }
        Some(Partition(v))
    }

    /// Removes one box from row k (1-indexed) when the result is a partition.
    pub fn remove_box(&self, k: usize) -> Option<Partition> {
        if k == 0 || k > self.len() || self.part(k) == self.part(k + 1) {
            return None;
        }
        let mut v = self.0.clone();
        v[k - 1] -= 1;
        if v[k - 1] == 0 {
            v.pop();
        }
        Some(Partition(v))
    }

    /// Rows k with an addable box.
    pub fn addable_rows(&self) -> Vec<usize> {
        (1..=self.len() + 1)
            .filter(|&k| k == 1 || self.part(k - 1) > self.part(k))
            .collect()
    }

    /// Rows k with a removable box.
    pub fn removable_rows(&self) -> Vec<usize> {
        (1..=self.len())
            .filter(|&k| self.part(k) > self.part(k + 1))
            .collect()
    }

    /// All partitions of n in reverse lexicographic order.
    pub fn all_of_size(n: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=n.min(max)).rev() {
                cur.push(p as u32);
                rec(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = CrystalError;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<i64> {
    fn from(p: Partition) -> Vec<i64> {
        p.0.into_iter().map(i64::from).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A charge vector (s_1, ..., s_l) with l at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Charge(Vec<i64>);

impl Charge {
    pub fn new(s: Vec<i64>) -> Result<Self> {
        if s.len() < 2 {
            return Err(CrystalError::InvalidLevel(s.len()));
        }
        Ok(Charge(s))
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    /// The entry for row j, 1-indexed.
    pub fn get(&self, j: usize) -> i64 {
        self.0[j - 1]
    }

    pub fn translate(&self, t: i64) -> Charge {
        Charge(self.0.iter().map(|s| s + t).collect())
    }
}

impl TryFrom<Vec<i64>> for Charge {
    type Error = CrystalError;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Charge::new(v)
    }
}

impl From<Charge> for Vec<i64> {
    fn from(c: Charge) -> Vec<i64> {
        c.0
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}
