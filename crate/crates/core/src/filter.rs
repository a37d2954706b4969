//! The cardinality filter `g_{f,ε}`.
//!
//! `g_{f,ε}(S) = f(S) + ε·(⌈n²/2⌉/8 − (|S| − n/2)²/2)`. The offset is a
//! concave function of `|S|` whose second difference is exactly `−ε`, so it
//! absorbs a cross violation of up to `ε`: if `f` is ε-approximately
//! cross-submodular then `g_{f,ε}` is submodular, and `|g − f|` never
//! exceeds `ε·⌊n²/2⌋/8`.

use crate::function::SetFunction;
use crate::subset::Subset;
use crate::{Error, Result};

/// `ε·(⌈n²/2⌉/8 − (k − n/2)²/2)` for a set of cardinality `k`.
///
/// Written as `ε·(⌈n²/2⌉ − (2k − n)²)/8` with the bracket in integers.
#[inline]
pub fn offset(n: usize, eps: f64, k: usize) -> f64 {
    let n = n as i128;
    let d = 2 * k as i128 - n;
    let num = (n * n).div_euclid(2) + (n * n).rem_euclid(2) - d * d;
    eps * num as f64 / 8.0
}

/// `ε·⌊n²/2⌋/8`, the guaranteed ℓ∞ distance between `f` and `g_{f,ε}`.
pub fn distance_bound(n: usize, eps: f64) -> f64 {
    let n = n as u128;
    eps * ((n * n) / 2) as f64 / 8.0
}

/// A lazy `g_{f,ε}`: every query issues exactly one query to the base.
#[derive(Clone, Debug)]
pub struct FilteredFunction<F> {
    base: F,
    eps: f64,
}

impl<F: SetFunction> FilteredFunction<F> {
    pub fn new(base: F, eps: f64) -> Result<Self> {
        check_eps(eps)?;
        Ok(Self { base, eps })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn offset_at(&self, k: usize) -> f64 {
        offset(self.base.ground_size(), self.eps, k)
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if eps >= 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(alloc::format!("filter ε must be finite and non-negative, got {eps}")))
    }
}

/// Wraps `f` as `g_{f,ε}`.
pub fn filter_function<F: SetFunction>(f: F, eps: f64) -> Result<FilteredFunction<F>> {
    FilteredFunction::new(f, eps)
}

/// `g_{f,ε}(S)`.
pub fn filter_value<F: SetFunction + ?Sized>(f: &F, eps: f64, s: &Subset) -> Result<f64> {
    check_eps(eps)?;
    Ok(f.eval(s)? + offset(f.ground_size(), eps, s.len()))
}

impl<F: SetFunction> SetFunction for FilteredFunction<F> {
    fn ground_size(&self) -> usize {
        self.base.ground_size()
    }

    fn value(&self, s: &Subset) -> f64 {
        self.base.value(s) + self.offset_at(s.len())
    }

    fn value_mask(&self, mask: u64) -> f64 {
        self.base.value_mask(mask) + self.offset_at(mask.count_ones() as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraints::{exact_epsilon, verify_submodular, ConstraintClass};
    use crate::function::{to_explicit, Cardinality, Counting};

    fn zero(n: usize) -> Cardinality<impl Fn(usize) -> f64> {
        Cardinality::new(n, |_| 0.0)
    }

    #[test]
    fn zero_function_offsets() {
        let two = Subset::from_indices(4, [1, 3]).unwrap();
        assert_eq!(filter_value(&zero(4), 1.0, &two).unwrap(), 1.0);
        assert_eq!(filter_value(&zero(4), 1.0, &Subset::empty(4)).unwrap(), -1.0);
        assert!(filter_value(&zero(4), -0.5, &two).is_err());
    }

    #[test]
    fn quadratic_extremal_becomes_constant() {
        for n in 1..=8usize {
            let f = Cardinality::new(n, move |k| {
                let d = n as f64 - 2.0 * k as f64;
                d * d / 8.0
            });
            let g = filter_function(&f, 1.0).unwrap();
            let c = ((n * n).div_ceil(2)) as f64 / 8.0;
            for m in 0..1u64 << n {
                assert_eq!(g.value_mask(m), c, "n={n} mask={m}");
            }
        }
    }

    #[test]
    fn distance_bound_values() {
        assert_eq!(distance_bound(4, 1.0), 1.0);
        assert_eq!(distance_bound(3, 1.0), 0.5);
        assert_eq!(distance_bound(7, 0.0), 0.0);
    }

    #[test]
    fn offset_extremes_match_the_bound() {
        for n in 1..=12 {
            let max = (0..=n).map(|k| offset(n, 1.0, k).abs()).fold(0.0, f64::max);
            assert_eq!(max, distance_bound(n, 1.0), "n={n}");
        }
    }

    #[test]
    fn zero_eps_is_identity() {
        let f = Cardinality::new(3, |k| (k * k) as f64 - 1.5);
        let g = filter_function(&f, 0.0).unwrap();
        for m in 0..8 {
            assert_eq!(g.value_mask(m), f.value_mask(m));
        }
    }

    #[test]
    fn squared_cardinality_is_repaired() {
        let f = Cardinality::new(3, |k| (k * k) as f64);
        let e = exact_epsilon(&f, ConstraintClass::Cross).unwrap().epsilon;
        assert_eq!(e, 2.0);
        let g = filter_function(&f, e).unwrap();
        assert_eq!(verify_submodular(&g, 1e-9).unwrap(), None);
        let short = filter_function(&f, 1.9).unwrap();
        assert!(verify_submodular(&short, 1e-9).unwrap().is_some());
    }

    #[test]
    fn one_base_query_per_query() {
        let base = Counting::new(Cardinality::new(5, |k| k as f64));
        let g = filter_function(&base, 0.7).unwrap();
        to_explicit(&g).unwrap();
        g.value(&Subset::from_indices(5, [2]).unwrap());
        assert_eq!(base.queries(), 33);
    }
}
