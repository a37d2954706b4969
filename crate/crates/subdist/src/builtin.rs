//! Resolving `--fn` arguments: a path to an explicit-function or graph file,
//! or a builtin name.
//!
//! Builtins: `fk:K`, `dimin:N`, `cross:N`, `square:N`, `log:K:SIZE`,
//! `er:N:P:SEED` (cut function of an Erdős–Rényi graph).

use std::path::Path;

use subdist_core::function::to_explicit;
use subdist_core::generators::gen_er;
use subdist_core::graph::CutFunction;
use subdist_core::lowerbounds::{
    block_views, make_fk, make_lbcross, make_lbdimin, make_log_block, squared_cardinality, BlockFunction,
    FkFunction,
};
use subdist_core::{ExplicitFunction, SetFunction, Subset};

use crate::error::{Error, Result};
use crate::format::{detect_kind, read_explicit, read_graph, FileKind};

#[derive(Clone)]
pub enum LoadedFunction {
    Explicit(ExplicitFunction),
    Cut(CutFunction),
    Block(BlockFunction),
    Fk(FkFunction),
}

impl LoadedFunction {
    /// An existing path is read as a file; anything else is parsed as a builtin.
    pub fn load(spec: &str) -> Result<Self> {
        let path = Path::new(spec);
        if path.is_file() {
            return Self::from_file(path);
        }
        Self::builtin(spec)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        match detect_kind(&text) {
            Some(FileKind::Explicit) => Ok(Self::Explicit(read_explicit(text.as_bytes())?)),
            Some(FileKind::Graph) => Ok(Self::Cut(CutFunction::new(read_graph(text.as_bytes())?))),
            None => Err(Error::Spec(format!(
                "{}: unrecognized file (expected header `n <int>` or `nodes <int>`)",
                path.display()
            ))),
        }
    }

    pub fn builtin(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(':').collect();
        let bad = || Error::Spec(format!("`{spec}` is neither a file nor a builtin"));
        let int = |s: &str| s.parse::<usize>().map_err(|_| bad());
        Ok(match parts.as_slice() {
            ["fk", k] => Self::Fk(make_fk(int(k)?)?),
            ["dimin", n] => Self::Block(make_lbdimin(int(n)?)?),
            ["cross", n] => Self::Block(make_lbcross(int(n)?)?),
            ["square", n] => Self::Block(squared_cardinality(int(n)?)?),
            ["log", k, size] => Self::Block(make_log_block(int(k)?, int(size)?)?),
            ["er", n, p, seed] => {
                let p: f64 = p.parse().map_err(|_| bad())?;
                let seed: u64 = seed.parse().map_err(|_| bad())?;
                Self::Cut(CutFunction::new(gen_er(int(n)?, p, seed)?))
            }
            _ => return Err(bad()),
        })
    }

    pub fn to_explicit(&self) -> Result<ExplicitFunction> {
        match self {
            Self::Explicit(f) => Ok(f.clone()),
            other => Ok(to_explicit(other)?),
        }
    }

    /// Block-function views usable for the ν lower bound.
    pub fn block_views(&self) -> Result<Vec<BlockFunction>> {
        match self {
            Self::Block(b) => Ok(vec![b.clone()]),
            Self::Fk(f) => Ok(vec![f.to_block()]),
            other => Ok(block_views(&other.to_explicit()?)),
        }
    }
}

impl SetFunction for LoadedFunction {
    fn ground_size(&self) -> usize {
        match self {
            Self::Explicit(f) => f.ground_size(),
            Self::Cut(f) => f.ground_size(),
            Self::Block(f) => f.ground_size(),
            Self::Fk(f) => f.ground_size(),
        }
    }

    fn value(&self, s: &Subset) -> f64 {
        match self {
            Self::Explicit(f) => f.value(s),
            Self::Cut(f) => f.value(s),
            Self::Block(f) => f.value(s),
            Self::Fk(f) => f.value(s),
        }
    }

    fn value_mask(&self, mask: u64) -> f64 {
        match self {
            Self::Explicit(f) => f.value_mask(mask),
            Self::Cut(f) => f.value_mask(mask),
            Self::Block(f) => f.value_mask(mask),
            Self::Fk(f) => f.value_mask(mask),
        }
    }
}
