//! The three submodularity constraint families and the approximation
//! parameters `ε^full`, `ε^dimin`, `ε^cross`.
//!
//! For a pair `{A, B}` the gap is `f(A∪B) + f(A∩B) − f(A) − f(B)`; a
//! function is ε-approximately submodular on a family when every gap in the
//! family is at most ε.

use alloc::boxed::Box;
use core::fmt;

use crate::function::{to_explicit, ExplicitFunction, SetFunction};
use crate::rng::{label, CounterRng};
use crate::subset::{full_mask, require_at_most, require_dense, Subset};
use crate::{Error, Result};

/// Largest ground set for which the full family is enumerated.
pub const FULL_LIMIT: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstraintClass {
    /// All incomparable pairs.
    Full,
    /// Pairs with `min(|A|, |B|) = |A∩B| + 1`.
    Dimin,
    /// Pairs with `|A| = |B| = |A∩B| + 1`.
    Cross,
}

impl ConstraintClass {
    pub const ALL: [ConstraintClass; 3] = [Self::Full, Self::Dimin, Self::Cross];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Full => "full",
            Self::Dimin => "dimin",
            Self::Cross => "cross",
        }
    }

    /// Whether the (dense) pair belongs to this family.
    pub fn admits(&self, a: u64, b: u64) -> bool {
        let (ca, cb, ci) = (a.count_ones(), b.count_ones(), (a & b).count_ones());
        match self {
            Self::Full => ca.min(cb) > ci,
            Self::Dimin => ca.min(cb) == ci + 1,
            Self::Cross => ca == cb && ca == ci + 1,
        }
    }

    fn limit(&self) -> usize {
        match self {
            Self::Full => FULL_LIMIT,
            Self::Dimin | Self::Cross => crate::DENSE_LIMIT,
        }
    }
}

impl fmt::Display for ConstraintClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl core::str::FromStr for ConstraintClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Self::Full),
            "dimin" => Ok(Self::Dimin),
            "cross" => Ok(Self::Cross),
            other => Err(Error::invalid(alloc::format!("unknown constraint class {other:?}"))),
        }
    }
}

/// An unordered pair of subsets, stored with `a < b` as bitmasks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstraintPair {
    pub a: u64,
    pub b: u64,
}

impl ConstraintPair {
    pub fn new(a: u64, b: u64) -> Self {
        Self {
            a: a.min(b),
            b: a.max(b),
        }
    }

    pub fn union(&self) -> u64 {
        self.a | self.b
    }

    pub fn intersection(&self) -> u64 {
        self.a & self.b
    }

    pub fn subsets(&self, n: usize) -> (Subset, Subset) {
        (
            Subset::from_mask(n, self.a).expect("pair within ground set"),
            Subset::from_mask(n, self.b).expect("pair within ground set"),
        )
    }

    /// `f(A∪B) + f(A∩B) − f(A) − f(B)`.
    pub fn gap<F: SetFunction + ?Sized>(&self, f: &F) -> f64 {
        f.value_mask(self.union()) + f.value_mask(self.intersection())
            - f.value_mask(self.a)
            - f.value_mask(self.b)
    }

    fn table_gap(&self, t: &[f64]) -> f64 {
        t[self.union() as usize] + t[self.intersection() as usize] - t[self.a as usize] - t[self.b as usize]
    }
}

/// `f(A∪B) + f(A∩B) − f(A) − f(B)` for arbitrary subsets.
pub fn gap<F: SetFunction + ?Sized>(f: &F, a: &Subset, b: &Subset) -> f64 {
    f.value(&a.union(b)) + f.value(&a.intersection(b)) - f.value(a) - f.value(b)
}

/// Every unordered pair of `class` over `0..n`, each exactly once.
///
/// Full pairs come out with `A` ascending then `B` ascending. Cross pairs are
/// `(C∪{a}, C∪{b})` for each `C` ascending and `a < b` outside `C`. Dimin
/// pairs are `(I∪{x}, I∪D)` for each intersection `I`, each `x ∉ I` and each
/// nonempty `D` disjoint from `I∪{x}`.
pub fn enumerate_pairs(
    n: usize,
    class: ConstraintClass,
) -> Result<Box<dyn Iterator<Item = ConstraintPair>>> {
    require_at_most(n, class.limit(), "constraint enumeration")?;
    let full = full_mask(n);
    let count = 1u64 << n;
    let outside = move |m: u64| (0..n).filter(move |&x| m >> x & 1 == 0);
    Ok(match class {
        ConstraintClass::Full => Box::new((0..count).flat_map(move |a| {
            (a + 1..count)
                .filter(move |&b| a & !b != 0)
                .map(move |b| ConstraintPair { a, b })
        })),
        ConstraintClass::Cross => Box::new((0..count).flat_map(move |c| {
            outside(c).flat_map(move |x| {
                outside(c)
                    .filter(move |&y| y > x)
                    .map(move |y| ConstraintPair::new(c | 1 << x, c | 1 << y))
            })
        })),
        ConstraintClass::Dimin => Box::new((0..count).flat_map(move |i| {
            outside(i).flat_map(move |x| {
                let rest = full & !i & !(1u64 << x);
                submasks(rest)
                    // singleton D gives a cross pair, reached from both ends
                    .filter(move |&d| d.count_ones() > 1 || d > 1 << x)
                    .map(move |d| ConstraintPair::new(i | 1 << x, i | d))
            })
        })),
    })
}

/// Nonempty submasks of `m` in decreasing order.
fn submasks(m: u64) -> impl Iterator<Item = u64> {
    let mut next = m;
    let mut done = m == 0;
    core::iter::from_fn(move || {
        if done {
            return None;
        }
        let d = next;
        next = (d - 1) & m;
        done = next == 0;
        Some(d)
    })
}

/// Number of pairs `enumerate_pairs` yields.
pub fn pair_count(n: usize, class: ConstraintClass) -> Result<u64> {
    Ok(enumerate_pairs(n, class)?.count() as u64)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EpsilonReport {
    pub class: ConstraintClass,
    pub epsilon: f64,
    /// A pair attaining the largest gap; absent when no gap is positive.
    pub witness: Option<ConstraintPair>,
}

/// Exact `ε^class(f)` by enumerating the family.
pub fn exact_epsilon<F: SetFunction + ?Sized>(f: &F, class: ConstraintClass) -> Result<EpsilonReport> {
    let n = f.ground_size();
    require_at_most(n, class.limit(), "constraint enumeration")?;
    let table = to_explicit(f)?;
    Ok(epsilon_of_table(&table, class))
}

pub(crate) fn epsilon_of_table(table: &ExplicitFunction, class: ConstraintClass) -> EpsilonReport {
    let t = table.table();
    let mut best: Option<(f64, ConstraintPair)> = None;
    for p in enumerate_pairs(table.ground_size(), class).expect("size checked by caller") {
        let g = p.table_gap(t);
        if g <= 0.0 {
            continue;
        }
        best = match best {
            Some((bg, bp)) if bg > g || (bg == g && bp < p) => Some((bg, bp)),
            _ => Some((g, p)),
        };
    }
    EpsilonReport {
        class,
        epsilon: best.map_or(0.0, |(g, _)| g),
        witness: best.map(|(_, p)| p),
    }
}

/// Sampled lower estimate of `ε^full`.
///
/// For each of `num_pairs` pairs, two sizes are drawn uniformly from
/// `1..=n−1` and `S`, `T` are uniform subsets of those sizes; the result is
/// `max(0, max_i gap(S_i, T_i))`. Pair `i` uses its own counter stream under
/// `seed`.
pub fn estimate_epsilon<F: SetFunction + ?Sized>(f: &F, num_pairs: usize, seed: u64) -> Result<f64> {
    let n = f.ground_size();
    if n < 2 {
        return Err(Error::invalid("estimating ε needs a ground set of at least 2 elements"));
    }
    if num_pairs == 0 {
        return Err(Error::invalid("estimating ε needs at least one sampled pair"));
    }
    let mut eps = 0.0f64;
    for i in 0..num_pairs {
        let mut rng = CounterRng::keyed(seed, &[label::ESTIMATE, i as u64]);
        let n1 = rng.range_inclusive(1, n as u64 - 1) as usize;
        let n2 = rng.range_inclusive(1, n as u64 - 1) as usize;
        let s = Subset::from_indices(n, rng.sample_without_replacement(n, n1))?;
        let t = Subset::from_indices(n, rng.sample_without_replacement(n, n2))?;
        eps = eps.max(gap(f, &s, &t));
    }
    Ok(eps)
}

/// A constraint pair together with its gap.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Violation {
    pub pair: ConstraintPair,
    pub gap: f64,
}

/// First cross pair whose gap exceeds `tol`, or `None` when `f` is
/// submodular up to `tol`.
pub fn verify_submodular<F: SetFunction + ?Sized>(f: &F, tol: f64) -> Result<Option<Violation>> {
    require_dense(f.ground_size(), "submodularity verification")?;
    let table = to_explicit(f)?;
    Ok(first_cross_violation(&table, tol))
}

pub(crate) fn first_cross_violation(table: &ExplicitFunction, tol: f64) -> Option<Violation> {
    let t = table.table();
    enumerate_pairs(table.ground_size(), ConstraintClass::Cross)
        .expect("dense table")
        .map(|pair| Violation {
            pair,
            gap: pair.table_gap(t),
        })
        .find(|v| v.gap > tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{Cardinality, Modular};
    use alloc::vec;
    use alloc::vec::Vec;

    fn brute_force(n: usize, class: ConstraintClass) -> Vec<ConstraintPair> {
        let mut out = Vec::new();
        for a in 0..1u64 << n {
            for b in a + 1..1u64 << n {
                if class.admits(a, b) {
                    out.push(ConstraintPair { a, b });
                }
            }
        }
        out
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 1..=6 {
            for class in ConstraintClass::ALL {
                let mut got: Vec<_> = enumerate_pairs(n, class).unwrap().collect();
                let expected = brute_force(n, class);
                got.sort();
                let len = got.len();
                got.dedup();
                assert_eq!(len, got.len(), "duplicates for {class} at n={n}");
                assert_eq!(got, expected, "{class} at n={n}");
            }
        }
    }

    #[test]
    fn small_counts() {
        let full: Vec<_> = enumerate_pairs(2, ConstraintClass::Full).unwrap().collect();
        assert_eq!(full, [ConstraintPair { a: 1, b: 2 }]);
        let dimin: Vec<_> = enumerate_pairs(2, ConstraintClass::Dimin).unwrap().collect();
        assert_eq!(dimin, [ConstraintPair { a: 1, b: 2 }]);
        assert_eq!(pair_count(3, ConstraintClass::Cross).unwrap(), 6);
    }

    #[test]
    fn cross_count_closed_form() {
        for n in 2..=6u64 {
            let expected = n * (n - 1) / 2 * (1 << (n - 2));
            assert_eq!(pair_count(n as usize, ConstraintClass::Cross).unwrap(), expected);
        }
    }

    #[test]
    fn size_limits() {
        assert!(enumerate_pairs(15, ConstraintClass::Full).is_err());
        assert!(enumerate_pairs(26, ConstraintClass::Cross).is_err());
        assert!(enumerate_pairs(25, ConstraintClass::Cross).is_ok());
    }

    #[test]
    fn squared_cardinality() {
        let f = Cardinality::new(3, |k| (k * k) as f64);
        let cross = exact_epsilon(&f, ConstraintClass::Cross).unwrap();
        assert_eq!(cross.epsilon, 2.0);
        // first cross pair in (A, B) order with gap 2 is ({0}, {1})
        assert_eq!(cross.witness, Some(ConstraintPair { a: 1, b: 2 }));
        assert_eq!(exact_epsilon(&f, ConstraintClass::Dimin).unwrap().epsilon, 4.0);
        let v = verify_submodular(&f, 1e-9).unwrap().unwrap();
        assert_eq!(v.gap, 2.0);
    }

    #[test]
    fn modular_and_constant_functions_have_zero_epsilon() {
        let f = Modular::with_offset(vec![1.5, -2.0, 0.25, 3.0], 7.0);
        for class in ConstraintClass::ALL {
            let r = exact_epsilon(&f, class).unwrap();
            assert_eq!(r.epsilon, 0.0);
            assert_eq!(r.witness, None);
        }
        let c = Cardinality::new(4, |_| 2.0);
        assert_eq!(verify_submodular(&c, 1e-9).unwrap(), None);
    }

    #[test]
    fn estimator_examples() {
        let f = Modular::new(vec![1.0, 2.0, -1.0, 0.5, 4.0]);
        assert_eq!(estimate_epsilon(&f, 200, 9).unwrap(), 0.0);
        assert!(estimate_epsilon(&Modular::new(vec![1.0]), 10, 0).is_err());
        assert!(estimate_epsilon(&f, 0, 0).is_err());

        // the statistic for the complementary halves of (n − 2|S|)²/8 at n = 4
        let q = Cardinality::new(4, |k| {
            let d = 4.0 - 2.0 * k as f64;
            d * d / 8.0
        });
        let a = Subset::from_indices(4, [0, 1]).unwrap();
        let b = Subset::from_indices(4, [2, 3]).unwrap();
        assert_eq!(gap(&q, &a, &b), 4.0);
        let est = estimate_epsilon(&q, 2000, 1).unwrap();
        assert!(est >= 4.0, "sampler should hit a complementary half pair, got {est}");
        assert!(est <= exact_epsilon(&q, ConstraintClass::Full).unwrap().epsilon);
    }

    #[test]
    fn class_parsing() {
        assert_eq!("dimin".parse::<ConstraintClass>().unwrap(), ConstraintClass::Dimin);
        assert!("half".parse::<ConstraintClass>().is_err());
    }
}
