//! Seeded random graphs with unit weights.
//!
//! Pair `(u, v)`, `u < v`, is decided by the uniform draw at counter
//! `index(u, v)` of the generator's stream, where pairs are indexed in
//! lexicographic order. A graph is therefore a pure function of its
//! parameters and seed.

use alloc::format;
use alloc::vec::Vec;

use crate::graph::{Edge, WeightedGraph};
use crate::rng::{derive_key, label, CounterRng};
use crate::{Error, Result};

fn uniform(key: u64, counter: u64) -> f64 {
    (CounterRng::at(key, counter) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::invalid(format!("probability {p} outside [0, 1]")))
    }
}

/// `G(n, p)`: each unordered pair is an edge of weight 1 with probability `p`.
pub fn gen_er(n: usize, p: f64, seed: u64) -> Result<WeightedGraph> {
    check_probability(p)?;
    let key = derive_key(seed, &[label::ERDOS_RENYI]);
    let mut edges = Vec::new();
    let mut index = 0u64;
    for u in 0..n {
        for v in u + 1..n {
            if uniform(key, index) < p {
                edges.push(Edge { u, v, w: 1.0 });
            }
            index += 1;
        }
    }
    WeightedGraph::new(n, edges)
}

/// Stochastic block model over consecutive parts of the given sizes.
pub fn gen_sbm(sizes: &[usize], probs: &[Vec<f64>], seed: u64) -> Result<WeightedGraph> {
    let parts = sizes.len();
    if parts == 0 || sizes.contains(&0) {
        return Err(Error::invalid("part sizes must be a nonempty list of positive integers"));
    }
    if probs.len() != parts || probs.iter().any(|row| row.len() != parts) {
        return Err(Error::invalid(format!(
            "probability matrix must be {parts}x{parts} to match the part sizes"
        )));
    }
    for (i, row) in probs.iter().enumerate() {
        for (j, &p) in row.iter().enumerate() {
            check_probability(p)?;
            if p != probs[j][i] {
                return Err(Error::invalid(format!("probability matrix is not symmetric at ({i}, {j})")));
            }
        }
    }
    let part_of: Vec<usize> = sizes.iter().enumerate().flat_map(|(i, &s)| core::iter::repeat_n(i, s)).collect();
    let n = part_of.len();
    let key = derive_key(seed, &[label::SBM]);
    let mut edges = Vec::new();
    let mut index = 0u64;
    for u in 0..n {
        for v in u + 1..n {
            if uniform(key, index) < probs[part_of[u]][part_of[v]] {
                edges.push(Edge { u, v, w: 1.0 });
            }
            index += 1;
        }
    }
    WeightedGraph::new(n, edges)
}
