//! Block functions, the ν lower bound on distance to submodularity, and the
//! extremal constructions.
//!
//! A block function depends on `S` only through the profile
//! `(|S∩S_1|, …, |S∩S_k|)` for a fixed partition into consecutive index
//! ranges `S_1, …, S_k`. For such a function with cardinality representation
//! `F`, every submodular `g` has `max_S |f(S) − g(S)| ≥ ν(f)` where
//!
//! ```text
//! ν(f) = ½·Π_j p_j·F(0,…,0) + Σ_i [Π_{j>i} p_j / (2 t_i)]·F(1,…,1, t_i, 0,…,0) − ½·F(1,…,1)
//! ```
//!
//! with `p_j = (t_j − 1)/t_j`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::function::{to_explicit, ExplicitFunction, SetFunction};
use crate::subset::{full_mask, require_dense, Subset, DENSE_LIMIT};
use crate::{Error, Result};

/// Cardinality representation: a function of the intersection profile.
pub type CardRep = Arc<dyn Fn(&[usize]) -> f64 + Send + Sync>;

/// Blocks laid out as consecutive ranges of `0..Σt_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockLayout {
    sizes: Vec<usize>,
    starts: Vec<usize>,
    block_of: Vec<usize>,
}

impl BlockLayout {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::invalid("block sizes must be a nonempty list of positive integers"));
        }
        let mut starts = Vec::with_capacity(sizes.len());
        let mut block_of = Vec::new();
        for (b, &t) in sizes.iter().enumerate() {
            starts.push(block_of.len());
            block_of.extend(core::iter::repeat_n(b, t));
        }
        Ok(Self {
            sizes,
            starts,
            block_of,
        })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn ground_size(&self) -> usize {
        self.block_of.len()
    }

    /// Elements of block `i`.
    pub fn block(&self, i: usize) -> core::ops::Range<usize> {
        self.starts[i]..self.starts[i] + self.sizes[i]
    }

    pub fn profile(&self, s: &Subset) -> Vec<usize> {
        let mut p = vec![0; self.sizes.len()];
        for i in s.iter() {
            p[self.block_of[i]] += 1;
        }
        p
    }

    pub fn profile_mask(&self, mask: u64) -> Vec<usize> {
        self.starts
            .iter()
            .zip(&self.sizes)
            .map(|(&start, &t)| ((mask >> start) & full_mask(t)).count_ones() as usize)
            .collect()
    }
}

/// A set function given by a block layout and a cardinality representation.
#[derive(Clone)]
pub struct BlockFunction {
    layout: BlockLayout,
    rep: CardRep,
}

impl BlockFunction {
    pub fn new(sizes: Vec<usize>, rep: impl Fn(&[usize]) -> f64 + Send + Sync + 'static) -> Result<Self> {
        Ok(Self {
            layout: BlockLayout::new(sizes)?,
            rep: Arc::new(rep),
        })
    }

    pub fn layout(&self) -> &BlockLayout {
        &self.layout
    }

    pub fn sizes(&self) -> &[usize] {
        self.layout.sizes()
    }

    /// `F(profile)`; the profile must lie in `Π [0, t_i]`.
    pub fn card_rep(&self, profile: &[usize]) -> Result<f64> {
        if profile.len() != self.sizes().len() || profile.iter().zip(self.sizes()).any(|(c, t)| c > t) {
            return Err(Error::invalid(alloc::format!(
                "profile {profile:?} outside the domain of block sizes {:?}",
                self.sizes()
            )));
        }
        Ok((self.rep)(profile))
    }
}

impl fmt::Debug for BlockFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BlockFunction").field("sizes", &self.layout.sizes).finish_non_exhaustive()
    }
}

impl SetFunction for BlockFunction {
    fn ground_size(&self) -> usize {
        self.layout.ground_size()
    }
    fn value(&self, s: &Subset) -> f64 {
        (self.rep)(&self.layout.profile(s))
    }
    fn value_mask(&self, mask: u64) -> f64 {
        (self.rep)(&self.layout.profile_mask(mask))
    }
}

/// Checked evaluation through the cardinality profile.
pub fn block_eval(bf: &BlockFunction, s: &Subset) -> Result<f64> {
    if s.ground_size() != bf.ground_size() {
        return Err(Error::GroundMismatch {
            expected: bf.ground_size(),
            found: s.ground_size(),
        });
    }
    bf.card_rep(&bf.layout.profile(s))
}

/// The ν lower bound for a block function.
pub fn nu(bf: &BlockFunction) -> f64 {
    let t = bf.sizes();
    let k = t.len();
    let ratio = |j: usize| (t[j] - 1) as f64 / t[j] as f64;
    let tail = |i: usize| (i + 1..k).fold(1.0, |acc, j| acc * ratio(j));
    let rep = |p: &[usize]| (bf.rep)(p);

    let mut total = 0.5 * (0..k).fold(1.0, |acc, j| acc * ratio(j)) * rep(&vec![0; k]);
    let mut profile = vec![0; k];
    for i in 0..k {
        profile[i] = t[i];
        total += tail(i) / (2.0 * t[i] as f64) * rep(&profile);
        profile[i] = 1;
    }
    total - 0.5 * rep(&profile)
}

/// The `(2, 3, …, k+1)`-block function `f_k` on `n_k = k(k+3)/2` elements.
///
/// On the backbone (at most one block met in two or more elements) the value
/// is `(M_S + Z_S − [S ≠ ∅])/2`, with `M_S` the largest block intersection and
/// `Z_S` the number of blocks missed; elsewhere it is `−(k+2)^{|S|}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FkFunction {
    k: usize,
    layout: BlockLayout,
}

/// Ground-set size of `f_k`.
pub fn fk_ground_size(k: usize) -> usize {
    k * (k + 3) / 2
}

pub fn make_fk(k: usize) -> Result<FkFunction> {
    if k == 0 {
        return Err(Error::invalid("f_k needs k >= 1"));
    }
    Ok(FkFunction {
        k,
        layout: BlockLayout::new((2..=k + 1).collect())?,
    })
}

fn fk_rep(k: usize, profile: &[usize]) -> f64 {
    let heavy = profile.iter().filter(|&&c| c >= 2).count();
    let size: usize = profile.iter().sum();
    if heavy <= 1 {
        let m = profile.iter().copied().max().unwrap_or(0);
        let z = profile.iter().filter(|&&c| c == 0).count();
        (m + z - usize::from(size > 0)) as f64 / 2.0
    } else {
        -libm::pow((k + 2) as f64, size as f64)
    }
}

impl FkFunction {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn layout(&self) -> &BlockLayout {
        &self.layout
    }

    pub fn in_backbone(&self, s: &Subset) -> bool {
        self.layout.profile(s).iter().filter(|&&c| c >= 2).count() <= 1
    }

    pub fn to_block(&self) -> BlockFunction {
        let k = self.k;
        BlockFunction {
            layout: self.layout.clone(),
            rep: Arc::new(move |p: &[usize]| fk_rep(k, p)),
        }
    }

    /// Dense table; errors when `n_k` exceeds the dense limit.
    pub fn to_explicit(&self) -> Result<ExplicitFunction> {
        require_dense(self.ground_size(), "explicit f_k")?;
        to_explicit(self)
    }
}

impl SetFunction for FkFunction {
    fn ground_size(&self) -> usize {
        self.layout.ground_size()
    }
    fn value(&self, s: &Subset) -> f64 {
        fk_rep(self.k, &self.layout.profile(s))
    }
    fn value_mask(&self, mask: u64) -> f64 {
        fk_rep(self.k, &self.layout.profile_mask(mask))
    }
}

/// `max(0, |S| − (n−1)/2)` for odd `n`.
pub fn make_lbdimin(n: usize) -> Result<BlockFunction> {
    if n.is_multiple_of(2) {
        return Err(Error::invalid(alloc::format!("the dimin construction needs odd n, got {n}")));
    }
    let half = (n - 1) / 2;
    BlockFunction::new(vec![n], move |p| p[0].saturating_sub(half) as f64)
}

/// `(n − 2|S|)²/8`.
pub fn make_lbcross(n: usize) -> Result<BlockFunction> {
    BlockFunction::new(vec![n], move |p| {
        let d = n as f64 - 2.0 * p[0] as f64;
        d * d / 8.0
    })
}

/// `|S|²`.
pub fn squared_cardinality(n: usize) -> Result<BlockFunction> {
    BlockFunction::new(vec![n], |p| (p[0] * p[0]) as f64)
}

/// `log₂ max_i |S∩S_i|` over `k` blocks of `block_size`, and `0` at `∅`.
pub fn make_log_block(k: usize, block_size: usize) -> Result<BlockFunction> {
    if k == 0 || block_size == 0 {
        return Err(Error::invalid("log block function needs k >= 1 and block_size >= 1"));
    }
    BlockFunction::new(vec![block_size; k], |p| match p.iter().copied().max() {
        Some(m) if m > 0 => libm::log2(m as f64),
        _ => 0.0,
    })
}

/// `f − min_T f(T)`.
pub fn shift_nonneg<F: SetFunction + ?Sized>(f: &F) -> Result<ExplicitFunction> {
    let table = to_explicit(f)?;
    let min = table.min_value();
    Ok(table.shifted(-min))
}

/// Block views of a dense table: the trivial one with every element in its
/// own block, and, when the table depends only on `|S|`, the one-block view.
pub fn block_views(f: &ExplicitFunction) -> Vec<BlockFunction> {
    let n = f.ground_size();
    assert!(n <= DENSE_LIMIT);
    let table: Arc<[f64]> = f.table().into();
    let mut views = Vec::new();
    let singletons = table.clone();
    views.push(BlockFunction {
        layout: BlockLayout::new(vec![1; n]).expect("n >= 1"),
        rep: Arc::new(move |p: &[usize]| {
            let mask = p.iter().enumerate().fold(0usize, |m, (i, &c)| m | c << i);
            singletons[mask]
        }),
    });
    let symmetric = (0..1usize << n).all(|m| table[m] == table[(1 << m.count_ones()) - 1]);
    if symmetric {
        views.push(BlockFunction {
            layout: BlockLayout::new(vec![n]).expect("n >= 1"),
            rep: Arc::new(move |p: &[usize]| table[(1 << p[0]) - 1]),
        });
    }
    views
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraints::{exact_epsilon, ConstraintClass};

    fn set(n: usize, idx: &[usize]) -> Subset {
        Subset::from_indices(n, idx.iter().copied()).unwrap()
    }

    #[test]
    fn modular_block_eval() {
        let bf = BlockFunction::new(vec![2, 2], |p| (p[0] + p[1]) as f64).unwrap();
        assert_eq!(block_eval(&bf, &set(4, &[0, 2])).unwrap(), 2.0);
        assert_eq!(block_eval(&bf, &Subset::empty(4)).unwrap(), 0.0);
        assert!(block_eval(&bf, &Subset::empty(5)).is_err());
        assert!(bf.card_rep(&[3, 0]).is_err());
        assert!(BlockFunction::new(vec![2, 0], |_| 0.0).is_err());
    }

    #[test]
    fn fk_values() {
        let f2 = make_fk(2).unwrap();
        assert_eq!(f2.ground_size(), 5);
        assert_eq!(f2.value(&Subset::empty(5)), 1.0);
        assert_eq!(f2.value(&set(5, &[0, 2])), 0.0);
        assert_eq!(f2.value(&set(5, &[0, 1])), 1.0);
        assert_eq!(f2.value(&set(5, &[0, 1, 2, 3])), -256.0);
        assert!(!f2.in_backbone(&set(5, &[0, 1, 2, 3])));
        assert_eq!(block_eval(&f2.to_block(), &set(5, &[0, 2])).unwrap(), 0.0);

        let f1 = make_fk(1).unwrap();
        let t = f1.to_explicit().unwrap();
        assert_eq!(t.table(), &[0.5, 0.0, 0.0, 0.5]);
        assert_eq!(exact_epsilon(&f1, ConstraintClass::Cross).unwrap().epsilon, 1.0);

        assert_eq!([1, 2, 3].map(fk_ground_size), [2, 5, 9]);
        assert!(make_fk(0).is_err());
    }

    #[test]
    fn fk_nu_is_k_over_four() {
        for k in 1..=6 {
            let v = nu(&make_fk(k).unwrap().to_block());
            assert!((v - k as f64 / 4.0).abs() < 1e-12, "k={k}: {v}");
        }
    }

    #[test]
    fn nu_of_constant_is_zero() {
        for sizes in [vec![1], vec![2, 3], vec![4, 1, 2, 5]] {
            let bf = BlockFunction::new(sizes, |_| 3.25).unwrap();
            assert!(nu(&bf).abs() < 1e-12);
        }
    }

    #[test]
    fn log_block() {
        let bf = make_log_block(2, 2).unwrap();
        assert_eq!(bf.value(&set(4, &[0, 2])), 0.0);
        assert_eq!(bf.value(&set(4, &[2, 3])), 1.0);
        assert_eq!(bf.value(&Subset::empty(4)), 0.0);
        assert!((nu(&bf) - 0.375).abs() < 1e-12);
    }

    #[test]
    fn extremal_functions() {
        let d = make_lbdimin(5).unwrap();
        assert_eq!(d.value(&set(5, &[0, 1, 4])), 1.0);
        assert_eq!(d.value(&set(5, &[0, 1])), 0.0);
        assert!(make_lbdimin(4).is_err());
        assert_eq!(exact_epsilon(&d, ConstraintClass::Dimin).unwrap().epsilon, 1.0);

        let c = make_lbcross(3).unwrap();
        assert_eq!(c.value(&Subset::empty(3)), 9.0 / 8.0);
        let c4 = make_lbcross(4).unwrap();
        assert_eq!(crate::constraints::gap(&c4, &set(4, &[0, 1]), &set(4, &[2, 3])), 4.0);
    }

    #[test]
    fn shifting() {
        let f1 = make_fk(1).unwrap();
        assert_eq!(shift_nonneg(&f1).unwrap().table(), &[0.5, 0.0, 0.0, 0.5]);
        let c = BlockFunction::new(vec![3], |_| -4.0).unwrap();
        assert!(shift_nonneg(&c).unwrap().table().iter().all(|&v| v == 0.0));
        let f2 = make_fk(2).unwrap();
        let g2 = shift_nonneg(&f2).unwrap();
        assert!(g2.min_value() == 0.0);
    }

    #[test]
    fn views_reproduce_the_table() {
        let t = make_lbcross(4).unwrap();
        let table = to_explicit(&t).unwrap();
        let views = block_views(&table);
        assert_eq!(views.len(), 2);
        for v in &views {
            assert_eq!(to_explicit(v).unwrap(), table);
        }
        let f2 = make_fk(2).unwrap().to_explicit().unwrap();
        assert_eq!(block_views(&f2).len(), 1);
        assert!(nu(&block_views(&f2)[0]).abs() < 1e-12);
    }
}
