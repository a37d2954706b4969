//! Additive noise wrappers `f(S) = base(S) + Z_S`.
//!
//! `Z_S` is a pure function of the noise seed and the subset's canonical
//! key, so a noisy function needs no memo table and is safe to share across
//! threads.

use crate::function::SetFunction;
use crate::rng::{derive_key, label, CounterRng};
use crate::subset::{Subset, DENSE_LIMIT};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NoiseKind {
    None,
    /// Mean 0, variance `sigma2`.
    Gaussian { sigma2: f64 },
    /// `+c` or `-c`, each with probability 1/2.
    Rademacher { c: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseModel {
    pub kind: NoiseKind,
    pub seed: u64,
}

impl NoiseModel {
    pub fn new(kind: NoiseKind, seed: u64) -> Result<Self> {
        match kind {
            NoiseKind::Gaussian { sigma2 } if !(sigma2 >= 0.0 && sigma2.is_finite()) => {
                Err(Error::invalid("Gaussian variance must be finite and non-negative"))
            }
            NoiseKind::Rademacher { c } if !(c >= 0.0 && c.is_finite()) => {
                Err(Error::invalid("Rademacher magnitude must be finite and non-negative"))
            }
            _ => Ok(Self { kind, seed }),
        }
    }

    pub fn none() -> Self {
        Self {
            kind: NoiseKind::None,
            seed: 0,
        }
    }

    /// The draw `Z_S` for the subset with canonical key `key`.
    pub fn draw(&self, key: u64) -> f64 {
        let rng = || CounterRng::new(derive_key(self.seed, &[label::NOISE, key]));
        match self.kind {
            NoiseKind::None => 0.0,
            NoiseKind::Gaussian { sigma2 } => libm::sqrt(sigma2) * rng().next_gaussian(),
            NoiseKind::Rademacher { c } => {
                if rng().next_u64() >> 63 == 0 {
                    c
                } else {
                    -c
                }
            }
        }
    }
}

/// `base(S) + Z_S`.
#[derive(Clone, Debug)]
pub struct NoisyFunction<F> {
    base: F,
    noise: NoiseModel,
}

pub fn noisy_function<F: SetFunction>(base: F, noise: NoiseModel) -> NoisyFunction<F> {
    NoisyFunction { base, noise }
}

impl<F> NoisyFunction<F> {
    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn noise(&self) -> &NoiseModel {
        &self.noise
    }
}

impl<F: SetFunction> SetFunction for NoisyFunction<F> {
    fn ground_size(&self) -> usize {
        self.base.ground_size()
    }

    fn value(&self, s: &Subset) -> f64 {
        self.base.value(s) + self.noise.draw(s.canonical_key())
    }

    fn value_mask(&self, mask: u64) -> f64 {
        if self.ground_size() <= DENSE_LIMIT {
            self.base.value_mask(mask) + self.noise.draw(mask)
        } else {
            let s = Subset::from_mask(self.ground_size(), mask).expect("mask outside ground set");
            self.value(&s)
        }
    }
}
