//! Set partitions of `{0, .., n - 1}` into nonempty blocks.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest `n` the brute-force routines will enumerate unless told otherwise.
pub const DEFAULT_CAP: usize = 14;

/// An unordered partition of point indices into nonempty blocks.
///
/// Always canonical: each block sorted ascending, blocks ordered by their
/// minimum. `Ord` is lexicographic on that form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Canonicalizes `blocks`, rejecting empty or overlapping blocks.
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        if let Some(i) = blocks.iter().position(Vec::is_empty) {
            return Err(Error::EmptyBlock(i));
        }
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        let mut all: Vec<usize> = blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        if let Some(w) = all.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidPartition(format!("index {} appears twice", w[0])));
        }
        Ok(Self { blocks })
    }

    /// Like [`Partition::new`], additionally requiring the union to be `0..n`.
    pub fn over(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let p = Self::new(blocks)?;
        p.check_covers(n)?;
        Ok(p)
    }

    pub fn check_covers(&self, n: usize) -> Result<()> {
        let total: usize = self.blocks.iter().map(Vec::len).sum();
        if let Some(&i) = self.blocks.iter().flatten().find(|&&i| i >= n) {
            return Err(Error::InvalidPartition(format!("index {i} is out of range for {n} points")));
        }
        if total != n {
            return Err(Error::InvalidPartition(format!("covers {total} of {n} points")));
        }
        Ok(())
    }

    /// Builds the partition encoded by a restricted growth string.
    pub fn from_rgs(rgs: &[usize]) -> Self {
        let blocks_n = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); blocks_n];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i);
        }
        // An RGS lists blocks in order of first occurrence, which is canonical.
        Self { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Total number of indices covered.
    pub fn len(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block index containing `point`.
    pub fn block_of(&self, point: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&point).is_ok())
    }

    /// Block sizes sorted descending.
    pub fn induced_integer_partition(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }
}

/// `0,3|1,4|2`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (bi, b) in self.blocks.iter().enumerate() {
            if bi > 0 {
                f.write_str("|")?;
            }
            for (k, i) in b.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{i}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidPartition("empty partition".into()));
        }
        let blocks = s
            .split('|')
            .map(|block| {
                block
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::InvalidPartition(format!("bad index {t:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(blocks)
    }
}

/// Lexicographic stream of restricted growth strings of length `n` using
/// exactly `r` distinct values.
#[derive(Debug, Clone)]
pub struct SetPartitions {
    rgs: Vec<usize>,
    /// `prefix_max[i] = max(rgs[..=i])`.
    prefix_max: Vec<usize>,
    r: usize,
    done: bool,
}

impl SetPartitions {
    fn new(n: usize, r: usize) -> Self {
        // Smallest string: zeros, then 1, 2, .., r - 1 in the tail.
        let mut rgs = vec![0; n];
        for (v, slot) in rgs[n - r + 1..].iter_mut().enumerate() {
            *slot = v + 1;
        }
        let mut s = Self { rgs, prefix_max: vec![0; n], r, done: false };
        s.refresh_prefix(0);
        s
    }

    fn refresh_prefix(&mut self, from: usize) {
        for i in from..self.rgs.len() {
            let prev = if i == 0 { 0 } else { self.prefix_max[i - 1] };
            self.prefix_max[i] = prev.max(self.rgs[i]);
        }
    }

    /// Advances to the next string; `false` once exhausted.
    fn advance(&mut self) -> bool {
        let n = self.rgs.len();
        for i in (1..n).rev() {
            let cap = (self.prefix_max[i - 1] + 1).min(self.r - 1);
            if self.rgs[i] >= cap {
                continue;
            }
            self.rgs[i] += 1;
            let m = self.prefix_max[i - 1].max(self.rgs[i]);
            // Fill the suffix minimally while still reaching r distinct values.
            let missing = self.r - 1 - m;
            let tail = n - 1 - i;
            if missing > tail {
                continue;
            }
            for slot in &mut self.rgs[i + 1..n - missing] {
                *slot = 0;
            }
            for (v, slot) in self.rgs[n - missing..].iter_mut().enumerate() {
                *slot = m + 1 + v;
            }
            self.refresh_prefix(i);
            return true;
        }
        false
    }
}

impl Iterator for SetPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let out = Partition::from_rgs(&self.rgs);
        self.done = !self.advance();
        Some(out)
    }
}

/// Every partition of `{0, .., n - 1}` into exactly `r` nonempty blocks, in
/// restricted-growth-string order. Refuses `n > cap`.
pub fn enumerate_set_partitions(n: usize, r: usize, cap: usize) -> Result<SetPartitions> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    if r < 1 || r > n {
        return Err(Error::InvalidArgument(format!("need 1 <= r <= n, got r = {r}, n = {n}")));
    }
    Ok(SetPartitions::new(n, r))
}
