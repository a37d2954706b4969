//! Maximization routines that only query a [`SetFunction`].

use alloc::vec::Vec;

use crate::function::SetFunction;
use crate::rng::{derive_key, label, CounterRng};
use crate::subset::{require_dense, Subset};
use crate::{Error, Result};

/// Move cap for [`local_search`].
pub const MAX_MOVES: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GreedyStep {
    pub step: usize,
    pub element: usize,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptResult {
    pub best_set: Subset,
    pub best_value: f64,
    /// Greedy only.
    pub trajectory: Option<Vec<GreedyStep>>,
    /// Local search only: the local optimum before the complement check.
    pub local_optimum: Option<Subset>,
    pub query_count: u64,
}

impl OptResult {
    fn new(best_set: Subset, best_value: f64, query_count: u64) -> Self {
        Self {
            best_set,
            best_value,
            trajectory: None,
            local_optimum: None,
            query_count,
        }
    }
}

/// Global maximum over all subsets; the smallest bitmask wins ties.
pub fn exhaustive_max<F: SetFunction + ?Sized>(f: &F) -> Result<OptResult> {
    exhaustive(f, |v, best| v > best)
}

/// Global minimum over all subsets; the smallest bitmask wins ties.
pub fn exhaustive_min<F: SetFunction + ?Sized>(f: &F) -> Result<OptResult> {
    exhaustive(f, |v, best| v < best)
}

fn exhaustive<F: SetFunction + ?Sized>(f: &F, better: impl Fn(f64, f64) -> bool) -> Result<OptResult> {
    let n = f.ground_size();
    require_dense(n, "exhaustive search")?;
    let mut best = (0u64, f.value_mask(0));
    for m in 1..1u64 << n {
        let v = f.value_mask(m);
        if better(v, best.1) {
            best = (m, v);
        }
    }
    Ok(OptResult::new(Subset::from_mask(n, best.0)?, best.1, 1 << n))
}

/// Cardinality greedy: `budget` times, add the element maximizing
/// `f(S ∪ {x})`, lowest index on ties.
pub fn greedy<F: SetFunction + ?Sized>(f: &F, budget: usize) -> Result<OptResult> {
    let n = f.ground_size();
    if budget > n {
        return Err(Error::invalid(alloc::format!("greedy budget {budget} exceeds ground set size {n}")));
    }
    let mut s = Subset::empty(n);
    let mut queries = 0u64;
    let mut trajectory = Vec::with_capacity(budget);
    let mut value = if budget == 0 {
        queries += 1;
        f.value(&s)
    } else {
        f64::NAN
    };
    for step in 0..budget {
        let mut best: Option<(usize, f64)> = None;
        for x in 0..n {
            if s.contains(x) {
                continue;
            }
            s.insert(x);
            let v = f.value(&s);
            queries += 1;
            s.remove(x);
            if best.is_none_or(|(_, bv)| v > bv) {
                best = Some((x, v));
            }
        }
        let (element, v) = best.expect("budget <= n leaves a candidate");
        s.insert(element);
        value = v;
        trajectory.push(GreedyStep { step, element, value: v });
    }
    let mut out = OptResult::new(s, value, queries);
    out.trajectory = Some(trajectory);
    Ok(out)
}

/// Unconstrained local search with single-element moves.
///
/// From `start`, take the first move improving `f` by more than `tau`,
/// scanning additions by ascending index and then deletions by ascending
/// index, until no such move exists. Returns the better of the local
/// optimum and its complement (the local optimum on ties).
pub fn local_search<F: SetFunction + ?Sized>(f: &F, tau: f64, start: &Subset) -> Result<OptResult> {
    let n = f.ground_size();
    if start.ground_size() != n {
        return Err(Error::GroundMismatch {
            expected: n,
            found: start.ground_size(),
        });
    }
    if tau.is_nan() || tau < 0.0 {
        return Err(Error::invalid("local search threshold must be non-negative"));
    }
    let mut s = start.clone();
    let mut value = f.value(&s);
    let mut queries = 1u64;
    let mut moves = 0usize;
    'search: loop {
        for adding in [true, false] {
            for x in 0..n {
                if s.contains(x) != adding {
                    if adding {
                        s.insert(x);
                    } else {
                        s.remove(x);
                    }
                    let v = f.value(&s);
                    queries += 1;
                    if v > value + tau {
                        value = v;
                        moves += 1;
                        if moves >= MAX_MOVES {
                            return Err(Error::MoveCap(MAX_MOVES));
                        }
                        continue 'search;
                    }
                    if adding {
                        s.remove(x);
                    } else {
                        s.insert(x);
                    }
                }
            }
        }
        break;
    }
    let complement = s.complement();
    let complement_value = f.value(&complement);
    queries += 1;
    let mut out = if complement_value > value {
        OptResult::new(complement, complement_value, queries)
    } else {
        OptResult::new(s.clone(), value, queries)
    };
    out.local_optimum = Some(s);
    Ok(out)
}

/// Whether no single addition or deletion improves `f(s)` by more than `tau`.
pub fn is_local_optimum<F: SetFunction + ?Sized>(f: &F, s: &Subset, tau: f64) -> bool {
    let base = f.value(s);
    (0..f.ground_size()).all(|x| {
        let moved = if s.contains(x) { s.without(x) } else { s.with(x) };
        f.value(&moved) <= base + tau
    })
}

/// Randomized double greedy.
///
/// With `X = ∅`, `Y = [n]`, for each `i` ascending: `a = f(X+i) − f(X)`,
/// `b = f(Y−i) − f(Y)`; add `i` to `X` with probability `a⁺/(a⁺+b⁺)`,
/// otherwise drop it from `Y`. When `a⁺ + b⁺ = 0` the element is added. The
/// coin for element `i` is counter `i` of the stream keyed by `seed`.
pub fn rdg<F: SetFunction + ?Sized>(f: &F, seed: u64) -> OptResult {
    let n = f.ground_size();
    let key = derive_key(seed, &[label::RDG]);
    let mut x = Subset::empty(n);
    let mut y = Subset::full(n);
    let mut fx = f.value(&x);
    let mut fy = f.value(&y);
    let mut queries = 2u64;
    for i in 0..n {
        x.insert(i);
        let fx_add = f.value(&x);
        y.remove(i);
        let fy_del = f.value(&y);
        queries += 2;
        let a = (fx_add - fx).max(0.0);
        let b = (fy_del - fy).max(0.0);
        let add = if a + b == 0.0 {
            true
        } else {
            let u = (CounterRng::at(key, i as u64) >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            u < a / (a + b)
        };
        if add {
            y.insert(i);
            fx = fx_add;
        } else {
            x.remove(i);
            fy = fy_del;
        }
    }
    debug_assert_eq!(x, y);
    OptResult::new(x, fx, queries)
}
