#![allow(dead_code)]

use subdist_core::graph::{CutFunction, WeightedGraph};
use subdist_core::rng::CounterRng;
use subdist_core::function::to_explicit;
use subdist_core::ExplicitFunction;

/// Random submodular table: non-negative cut + concave-of-cardinality + modular.
pub fn random_submodular(n: usize, seed: u64) -> ExplicitFunction {
    let mut rng = CounterRng::new(seed);
    let mut triples = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_f64() < 0.6 {
                triples.push((u, v, rng.next_f64() * 3.0));
            }
        }
    }
    let cut = CutFunction::new(WeightedGraph::from_triples(n, &triples).unwrap());
    let w: Vec<f64> = (0..n).map(|_| rng.next_f64() * 2.0 - 1.0).collect();
    let conc = rng.next_f64() * 2.0;
    let cut_table = to_explicit(&cut).unwrap().into_table();
    ExplicitFunction::from_fn(n, |m| {
        let k = m.count_ones() as f64;
        let modular: f64 = (0..n).filter(|i| m >> i & 1 == 1).map(|i| w[i]).sum();
        cut_table[m as usize] + conc * k.sqrt() + modular
    })
    .unwrap()
}

/// Submodular base plus a perturbation bounded by `amp` per entry.
pub fn perturbed(n: usize, seed: u64, amp: f64) -> ExplicitFunction {
    let base = random_submodular(n, seed);
    let mut rng = CounterRng::new(seed ^ 0xA5A5_A5A5);
    ExplicitFunction::from_fn(n, |m| base.at(m) + amp * (2.0 * rng.next_f64() - 1.0)).unwrap()
}

/// Arbitrary table with entries in [-1, 1].
pub fn random_table(n: usize, seed: u64) -> ExplicitFunction {
    let mut rng = CounterRng::new(seed);
    ExplicitFunction::from_fn(n, |_| 2.0 * rng.next_f64() - 1.0).unwrap()
}

pub fn gap(t: &[f64], a: u64, b: u64) -> f64 {
    t[(a | b) as usize] + t[(a & b) as usize] - t[a as usize] - t[b as usize]
}

/// Largest gap over all pairs, no structure exploited.
pub fn brute_full(t: &[f64], n: usize) -> f64 {
    let size = 1u64 << n;
    let mut best = 0.0f64;
    for a in 0..size {
        for b in a + 1..size {
            if a & b != a && a & b != b {
                best = best.max(gap(t, a, b));
            }
        }
    }
    best
}

/// Largest gap over squares (C+a, C+b).
pub fn brute_cross(t: &[f64], n: usize) -> f64 {
    let mut best = 0.0f64;
    for c in 0..1u64 << n {
        for a in 0..n {
            for b in a + 1..n {
                if c >> a & 1 == 0 && c >> b & 1 == 0 {
                    best = best.max(gap(t, c | 1 << a, c | 1 << b));
                }
            }
        }
    }
    best
}
