//! Ground sets and subsets.
//!
//! A [`Subset`] is stored as a bitset over `0..n` for every `n`. The two
//! regimes differ in what is allowed and in the canonical encoding:
//! for `n <= DENSE_LIMIT` the subset's key is its bitmask and full
//! enumeration of `2^n` subsets is permitted; above that the key is a fixed
//! 64-bit hash of the sorted index list and dense operations are refused.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::rng::mix64;
use crate::{Error, Result};

/// Largest ground set for which operations over all `2^n` subsets are allowed.
pub const DENSE_LIMIT: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: usize,
}

// A ground set always has at least one element.
#[allow(clippy::len_without_is_empty)]
impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("ground set must have at least one element"));
        }
        Ok(Self { n })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_dense(&self) -> bool {
        self.n <= DENSE_LIMIT
    }

    /// Number of subsets; only meaningful in the dense regime.
    pub fn subset_count(&self) -> Result<usize> {
        require_dense(self.n, "dense enumeration")?;
        Ok(1usize << self.n)
    }

    pub fn empty(&self) -> Subset {
        Subset::empty(self.n)
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.n)
    }
}

/// Errors unless `n` is within the dense regime.
pub fn require_dense(n: usize, what: &'static str) -> Result<()> {
    require_at_most(n, DENSE_LIMIT, what)
}

pub(crate) fn require_at_most(n: usize, limit: usize, what: &'static str) -> Result<()> {
    if n > limit {
        Err(Error::SizeLimit { what, n, limit })
    } else {
        Ok(())
    }
}

/// Bitmask with the low `n` bits set (`n <= 64`).
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    n: usize,
    words: Vec<u64>,
}

impl Subset {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for (w, word) in s.words.iter_mut().enumerate() {
            *word = full_mask(n - 64 * w);
        }
        s
    }

    /// Subset of `0..n` given by the bits of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n > 64 {
            return Err(Error::SizeLimit {
                what: "bitmask subsets",
                n,
                limit: 64,
            });
        }
        if mask & !full_mask(n) != 0 {
            return Err(Error::IndexOutOfRange {
                index: 63 - (mask & !full_mask(n)).leading_zeros() as usize,
                n,
            });
        }
        let mut s = Self::empty(n);
        if n > 0 {
            s.words[0] = mask;
        }
        Ok(s)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, indices: I) -> Result<Self> {
        let mut s = Self::empty(n);
        for i in indices {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            s.insert(i);
        }
        Ok(s)
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    /// The bitmask, when the ground set fits in 64 bits.
    pub fn mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.n && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Inserts `i`; returns whether it was absent. Panics if `i >= n`.
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.n, "element {i} outside ground set of size {}", self.n);
        let was = self.contains(i);
        self.words[i / 64] |= 1 << (i % 64);
        !was
    }

    /// Removes `i`; returns whether it was present.
    pub fn remove(&mut self, i: usize) -> bool {
        let was = self.contains(i);
        if was {
            self.words[i / 64] &= !(1 << (i % 64));
        }
        was
    }

    pub fn with(&self, i: usize) -> Self {
        let mut s = self.clone();
        s.insert(i);
        s
    }

    pub fn without(&self, i: usize) -> Self {
        let mut s = self.clone();
        s.remove(i);
        s
    }

    pub fn complement(&self) -> Self {
        let mut s = Self::full(self.n);
        for (a, b) in s.words.iter_mut().zip(&self.words) {
            *a &= !b;
        }
        s
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.n, other.n, "subsets over different ground sets");
        Self {
            n: self.n,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(&a, &b)| a & !b == 0)
    }

    /// Elements in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            core::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(64 * w + bit)
            })
        })
    }

    pub fn to_indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Canonical 64-bit encoding: the bitmask in the dense regime, otherwise
    /// a hash of the length and the sorted index list.
    pub fn canonical_key(&self) -> u64 {
        if self.n <= DENSE_LIMIT {
            self.words.first().copied().unwrap_or(0)
        } else {
            sparse_key(self.iter())
        }
    }
}

fn sparse_key(indices: impl Iterator<Item = usize>) -> u64 {
    let mut h = 0x243F_6A88_85A3_08D3u64;
    let mut len = 0u64;
    for i in indices {
        h = mix64(h ^ (i as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        len += 1;
    }
    mix64(h ^ len)
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}/{}", self.n)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}
