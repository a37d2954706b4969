//! Additively approximately submodular set functions.
//!
//! The crate is `no_std` (it needs `alloc`) and contains every algorithm of
//! the workbench: subset representations and the [`SetFunction`] trait,
//! exact and sampled approximation parameters for the three constraint
//! families, the cardinality filter that turns an ε-approximately
//! submodular function into a submodular one, the extremal lower-bound
//! constructions, an LP for the exact ℓ∞ distance to submodularity on small
//! ground sets, and the maximization routines used by the experiments.
//!
//! File formats, data ingestion, the experiment harness and the CLI live in
//! the `subdist` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod constraints;
pub mod distance;
mod error;
pub mod filter;
pub mod function;
pub mod generators;
pub mod graph;
pub mod lowerbounds;
pub mod noise;
pub mod optimize;
pub mod rng;
pub mod subset;

pub use error::{Error, Result};
pub use function::{ExplicitFunction, SetFunction};
pub use subset::{GroundSet, Subset, DENSE_LIMIT};

/// Absolute tolerance used for exact-arithmetic claims on `f64` values.
pub const TOLERANCE: f64 = 1e-9;
