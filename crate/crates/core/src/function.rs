//! The set-function abstraction and its simplest concrete forms.

use alloc::boxed::Box;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};

use crate::subset::{require_dense, Subset};
use crate::{Error, Result};

/// A real-valued function on the subsets of `0..n`.
///
/// Implementations must be deterministic: evaluating the same subset twice
/// yields the identical value.
pub trait SetFunction {
    fn ground_size(&self) -> usize;

    /// Value at `s`. `s` must be a subset of this function's ground set.
    fn value(&self, s: &Subset) -> f64;

    /// Value at the subset encoded by `mask`; requires `ground_size() <= 64`.
    fn value_mask(&self, mask: u64) -> f64 {
        let s = Subset::from_mask(self.ground_size(), mask).expect("mask outside ground set");
        self.value(&s)
    }

    /// Checked evaluation.
    fn eval(&self, s: &Subset) -> Result<f64> {
        if s.ground_size() != self.ground_size() {
            return Err(Error::GroundMismatch {
                expected: self.ground_size(),
                found: s.ground_size(),
            });
        }
        Ok(self.value(s))
    }
}

macro_rules! forward_set_function {
    ($($ty:ty),*) => {$(
        impl<F: SetFunction + ?Sized> SetFunction for $ty {
            fn ground_size(&self) -> usize {
                (**self).ground_size()
            }
            fn value(&self, s: &Subset) -> f64 {
                (**self).value(s)
            }
            fn value_mask(&self, mask: u64) -> f64 {
                (**self).value_mask(mask)
            }
        }
    )*};
}

forward_set_function!(&F, Box<F>, Arc<F>);

/// A function stored as a table of `2^n` values indexed by bitmask.
#[derive(Clone, Debug, PartialEq)]
pub struct ExplicitFunction {
    n: usize,
    table: Vec<f64>,
}

impl ExplicitFunction {
    pub fn new(n: usize, table: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("ground set must have at least one element"));
        }
        require_dense(n, "explicit tables")?;
        if table.len() != 1 << n {
            return Err(Error::invalid(alloc::format!(
                "table has {} entries, expected 2^{n} = {}",
                table.len(),
                1usize << n
            )));
        }
        Ok(Self { n, table })
    }

    pub fn from_fn(n: usize, f: impl FnMut(u64) -> f64) -> Result<Self> {
        require_dense(n, "explicit tables")?;
        Self::new(n, (0..1u64 << n).map(f).collect())
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    pub fn into_table(self) -> Vec<f64> {
        self.table
    }

    #[inline]
    pub fn at(&self, mask: u64) -> f64 {
        self.table[mask as usize]
    }

    pub fn scaled(&self, c: f64) -> Self {
        self.map(|v| c * v)
    }

    pub fn shifted(&self, c: f64) -> Self {
        self.map(|v| v + c)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            n: self.n,
            table: self.table.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn min_value(&self) -> f64 {
        self.table.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// ℓ∞ distance between two tables over the same ground set.
    pub fn linf_distance(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n);
        self.table
            .iter()
            .zip(&other.table)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl SetFunction for ExplicitFunction {
    fn ground_size(&self) -> usize {
        self.n
    }
    fn value(&self, s: &Subset) -> f64 {
        self.table[s.mask().expect("dense subset") as usize]
    }
    fn value_mask(&self, mask: u64) -> f64 {
        self.table[mask as usize]
    }
}

/// Materializes `f` over all `2^n` subsets.
pub fn to_explicit<F: SetFunction + ?Sized>(f: &F) -> Result<ExplicitFunction> {
    let n = f.ground_size();
    require_dense(n, "explicit materialization")?;
    ExplicitFunction::from_fn(n, |m| f.value_mask(m))
}

/// `f(S) = offset + Σ_{i∈S} w_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Modular {
    weights: Vec<f64>,
    offset: f64,
}

impl Modular {
    pub fn new(weights: Vec<f64>) -> Self {
        Self::with_offset(weights, 0.0)
    }

    pub fn with_offset(weights: Vec<f64>, offset: f64) -> Self {
        assert!(!weights.is_empty(), "modular function needs at least one weight");
        Self { weights, offset }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

impl SetFunction for Modular {
    fn ground_size(&self) -> usize {
        self.weights.len()
    }
    fn value(&self, s: &Subset) -> f64 {
        s.iter().fold(self.offset, |acc, i| acc + self.weights[i])
    }
}

/// `f(S) = h(|S|)`.
#[derive(Clone)]
pub struct Cardinality<H> {
    n: usize,
    h: H,
}

impl<H: Fn(usize) -> f64> Cardinality<H> {
    pub fn new(n: usize, h: H) -> Self {
        Self { n, h }
    }
}

impl<H: Fn(usize) -> f64> SetFunction for Cardinality<H> {
    fn ground_size(&self) -> usize {
        self.n
    }
    fn value(&self, s: &Subset) -> f64 {
        (self.h)(s.len())
    }
    fn value_mask(&self, mask: u64) -> f64 {
        (self.h)(mask.count_ones() as usize)
    }
}

/// A set function given by a closure on subsets.
#[derive(Clone)]
pub struct FnSetFunction<G> {
    n: usize,
    g: G,
}

impl<G: Fn(&Subset) -> f64> FnSetFunction<G> {
    pub fn new(n: usize, g: G) -> Self {
        Self { n, g }
    }
}

impl<G: Fn(&Subset) -> f64> SetFunction for FnSetFunction<G> {
    fn ground_size(&self) -> usize {
        self.n
    }
    fn value(&self, s: &Subset) -> f64 {
        (self.g)(s)
    }
}

/// Counts the queries issued to the wrapped function.
#[derive(Debug)]
pub struct Counting<F> {
    inner: F,
    queries: AtomicU64,
}

impl<F> Counting<F> {
    pub fn new(inner: F) -> Self {
        Self {
            inner,
            queries: AtomicU64::new(0),
        }
    }

    pub fn queries(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    pub fn into_inner(self) -> F {
        self.inner
    }
}

impl<F: SetFunction> SetFunction for Counting<F> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }
    fn value(&self, s: &Subset) -> f64 {
        self.queries.fetch_add(1, Ordering::Relaxed);
        self.inner.value(s)
    }
    fn value_mask(&self, mask: u64) -> f64 {
        self.queries.fetch_add(1, Ordering::Relaxed);
        self.inner.value_mask(mask)
    }
}
