//! Set partitions in restricted-growth form, and their enumeration.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("invalid block count k={k} for n={n} points")]
    InvalidK { n: usize, k: usize },
    #[error("block {0} is empty")]
    EmptyBlock(usize),
    #[error("a partition needs at least one point")]
    NoPoints,
    #[error("point {} is assigned to more than one block", .0 + 1)]
    Overlap(usize),
    #[error("point {} is not covered by any block", .0 + 1)]
    Uncovered(usize),
    #[error("point {} is outside 1..={n}", .point + 1)]
    PointOutOfRange { point: usize, n: usize },
    #[error("partition covers {found} points, instance has {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("partition has {found} blocks, expected {expected}")]
    BlockCount { expected: usize, found: usize },
    #[error("prefix {0:?} is not a valid restricted-growth prefix")]
    InvalidPrefix(Vec<usize>),
}

/// A partition of `0..n` into `k` nonempty blocks, labelled as a
/// restricted-growth string: the first point has label 0 and each new label
/// is one more than the largest label seen so far.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Partition {
    labels: Vec<usize>,
    #[serde(skip)]
    k: usize,
}

impl Partition {
    /// Relabels blocks in order of first occurrence. Any label values are
    /// accepted; only equality between labels matters.
    pub fn canonicalize(labels: &[usize]) -> Result<Partition, PartitionError> {
        if labels.is_empty() {
            return Err(PartitionError::NoPoints);
        }
        let mut seen: Vec<usize> = Vec::new();
        let canonical = labels
            .iter()
            .map(|l| match seen.iter().position(|s| s == l) {
                Some(p) => p,
                None => {
                    seen.push(*l);
                    seen.len() - 1
                }
            })
            .collect();
        Ok(Partition { labels: canonical, k: seen.len() })
    }

    /// Canonicalizes and checks that exactly `k` blocks are used.
    pub fn from_labels(labels: &[usize], k: usize) -> Result<Partition, PartitionError> {
        let p = Self::canonicalize(labels)?;
        if p.k != k {
            return Err(PartitionError::BlockCount { expected: k, found: p.k });
        }
        Ok(p)
    }

    /// Builds a partition of `0..n` from explicit blocks.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Partition, PartitionError> {
        if n == 0 {
            return Err(PartitionError::NoPoints);
        }
        let mut labels = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(PartitionError::EmptyBlock(b));
            }
            for &point in block {
                if point >= n {
                    return Err(PartitionError::PointOutOfRange { point, n });
                }
                if labels[point] != usize::MAX {
                    return Err(PartitionError::Overlap(point));
                }
                labels[point] = b;
            }
        }
        if let Some(missing) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(PartitionError::Uncovered(missing));
        }
        Self::canonicalize(&labels)
    }

    pub fn singletons(n: usize) -> Partition {
        Partition { labels: (0..n).collect(), k: n }
    }

    pub fn whole(n: usize) -> Partition {
        Partition { labels: vec![0; n], k: 1 }
    }

    /// Wraps labels already known to be a restricted-growth string.
    pub(crate) fn from_rgs_unchecked(labels: Vec<usize>, k: usize) -> Partition {
        debug_assert!(is_restricted_growth(&labels));
        Partition { labels, k }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn block_of(&self, point: usize) -> usize {
        self.labels[point]
    }

    /// Blocks in label order; each block lists its points increasingly.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        blocks_of(&self.labels, self.k)
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes
    }

    /// Partition of the relabelled point set where point `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Partition {
        let mut labels = vec![0; self.labels.len()];
        for (i, &l) in self.labels.iter().enumerate() {
            labels[perm[i]] = l;
        }
        Self::canonicalize(&labels).expect("permutation keeps the partition nonempty")
    }

    pub fn check_size(&self, n: usize) -> Result<(), PartitionError> {
        if self.n() != n {
            return Err(PartitionError::SizeMismatch { expected: n, found: self.n() });
        }
        Ok(())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(deserializer)?;
        Partition::canonicalize(&labels).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Displays blocks with 1-based points, e.g. `{1,3}|{2}`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (b, block) in self.blocks().iter().enumerate() {
            if b > 0 {
                f.write_str("|")?;
            }
            f.write_str("{")?;
            for (idx, p) in block.iter().enumerate() {
                if idx > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

pub(crate) fn blocks_of(labels: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut blocks = vec![Vec::new(); k];
    for (i, &l) in labels.iter().enumerate() {
        blocks[l].push(i);
    }
    blocks
}

pub fn is_restricted_growth(labels: &[usize]) -> bool {
    let mut next = 0;
    for &l in labels {
        if l > next {
            return false;
        }
        if l == next {
            next += 1;
        }
    }
    true
}

/// Stirling number of the second kind, `S(n, k)`.
pub fn stirling2(n: usize, k: usize) -> u128 {
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            row[j] = row[j - 1] + (j as u128) * row[j];
        }
        row[0] = 0;
    }
    row[k]
}

/// Lexicographic enumeration of the `k`-block partitions of `0..n` whose
/// labels start with a fixed prefix.
#[derive(Debug, Clone)]
pub struct PartitionIter {
    labels: Vec<usize>,
    /// prefix_max[i] = max(labels[0..i]); entry 0 is unused.
    prefix_max: Vec<usize>,
    k: usize,
    fixed: usize,
    state: IterState,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum IterState {
    Fresh,
    Running,
    Done,
}

impl PartitionIter {
    pub fn new(n: usize, k: usize) -> Result<Self, PartitionError> {
        Self::with_prefix(n, k, &[])
    }

    /// Enumerates only the partitions whose first `prefix.len()` labels equal
    /// `prefix`. An infeasible (but well-formed) prefix yields nothing.
    pub fn with_prefix(n: usize, k: usize, prefix: &[usize]) -> Result<Self, PartitionError> {
        if k == 0 || k > n {
            return Err(PartitionError::InvalidK { n, k });
        }
        if prefix.len() > n || !is_restricted_growth(prefix) || prefix.iter().any(|&l| l >= k) {
            return Err(PartitionError::InvalidPrefix(prefix.to_vec()));
        }
        let mut it = PartitionIter {
            labels: vec![0; n],
            prefix_max: vec![0; n + 1],
            k,
            fixed: prefix.len(),
            state: IterState::Fresh,
        };
        let mut max = 0;
        for (i, &l) in prefix.iter().enumerate() {
            it.labels[i] = l;
            max = max.max(l);
            it.prefix_max[i + 1] = max;
        }
        let used = if prefix.is_empty() { 0 } else { max + 1 };
        if n - prefix.len() < k - used {
            it.state = IterState::Done;
        } else {
            it.fill_from(prefix.len());
        }
        Ok(it)
    }

    /// Lexicographically least feasible completion of `labels[..start]`.
    fn fill_from(&mut self, start: usize) {
        let n = self.labels.len();
        let mut max = self.prefix_max[start];
        for i in start..n {
            let label = if i == 0 {
                0
            } else {
                let used = max + 1;
                if n - i > self.k - used.min(self.k) { 0 } else { used }
            };
            self.labels[i] = label;
            max = max.max(label);
            self.prefix_max[i + 1] = max;
        }
    }

    /// Advances to the next partition in place; returns false when exhausted.
    pub fn advance(&mut self) -> bool {
        match self.state {
            IterState::Done => return false,
            IterState::Fresh => {
                self.state = IterState::Running;
                return true;
            }
            IterState::Running => {}
        }
        let n = self.labels.len();
        for i in (self.fixed.max(1)..n).rev() {
            let before = self.prefix_max[i];
            let candidate = self.labels[i] + 1;
            if candidate > before + 1 || candidate >= self.k {
                continue;
            }
            let new_max = before.max(candidate);
            if n - i - 1 < self.k - 1 - new_max {
                continue;
            }
            self.labels[i] = candidate;
            self.prefix_max[i + 1] = new_max;
            self.fill_from(i + 1);
            return true;
        }
        self.state = IterState::Done;
        false
    }

    /// Current labels; valid after `advance` returned true.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.advance() {
            Some(Partition::from_rgs_unchecked(self.labels.clone(), self.k))
        } else {
            None
        }
    }
}

/// Stream of every `k`-block partition of `0..n`, lexicographic in
/// restricted-growth order; yields exactly `S(n, k)` items.
pub fn enumerate_partitions(n: usize, k: usize) -> Result<PartitionIter, PartitionError> {
    PartitionIter::new(n, k)
}

/// All restricted-growth prefixes of length `len` that extend to at least one
/// `k`-block partition of `0..n`, in lexicographic order.
pub fn feasible_prefixes(n: usize, k: usize, len: usize) -> Vec<Vec<usize>> {
    let len = len.min(n);
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn rec(n: usize, k: usize, len: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let used = current.iter().copied().max().map_or(0, |m| m + 1);
        if n - current.len() < k.saturating_sub(used) {
            return;
        }
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        for label in 0..=used.min(k - 1) {
            if current.is_empty() && label > 0 {
                break;
            }
            current.push(label);
            rec(n, k, len, current, out);
            current.pop();
        }
    }
    if k >= 1 && k <= n {
        rec(n, k, len, &mut current, &mut out);
    }
    out
}
