//! File formats, SNAP ingestion, experiment harness and function loading
//! on top of `subdist-core`.

pub mod builtin;
mod error;
pub mod format;
pub mod harness;
pub mod ingest;

pub use error::{Error, Result};
pub use subdist_core as core;
