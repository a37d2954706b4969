//! Seeded experiments: noisy cut functions, ε from an estimate, exact
//! enumeration or a fixed value, and paired algorithm runs on `f` and on its
//! filtered version `g`.
//!
//! Every trial derives its own seed from `(master_seed, trial)`, so results
//! do not depend on the number of worker threads.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use subdist_core::constraints::{estimate_epsilon, exact_epsilon, verify_submodular, ConstraintClass, FULL_LIMIT};
use subdist_core::filter::filter_function;
use subdist_core::generators::{gen_er, gen_sbm};
use subdist_core::graph::{CutFunction, WeightedGraph};
use subdist_core::noise::{noisy_function, NoiseKind, NoiseModel};
use subdist_core::optimize::{exhaustive_max, local_search, rdg};
use subdist_core::rng::{derive_key, label};
use subdist_core::{SetFunction, Subset, DENSE_LIMIT};

use crate::error::{Error, Result};
use crate::ingest::ingest_snap_csv;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GraphSource {
    Er { n: usize, p: f64 },
    Sbm { sizes: Vec<usize>, probs: Vec<Vec<f64>> },
    /// SNAP CSV; a relative path is resolved against the config file.
    Csv { path: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum NoiseSpec {
    None,
    Gaussian { sigma2: f64 },
    Rademacher { c: f64 },
}

impl NoiseSpec {
    fn kind(self) -> NoiseKind {
        match self {
            Self::None => NoiseKind::None,
            Self::Gaussian { sigma2 } => NoiseKind::Gaussian { sigma2 },
            Self::Rademacher { c } => NoiseKind::Rademacher { c },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algo {
    LocalSearch,
    Rdg,
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum EpsMode {
    /// `num_pairs` defaults to `10·n²`.
    Estimate {
        #[serde(default)]
        num_pairs: Option<usize>,
    },
    /// Exact ε^cross; requires `n ≤ 14`.
    Exact,
    Fixed(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub graph: GraphSource,
    pub noise: NoiseSpec,
    pub algo: Algo,
    pub trials: usize,
    pub eps_mode: EpsMode,
    pub master_seed: u64,
    /// Improvement threshold for local search.
    #[serde(default)]
    pub tau: f64,
}

impl ExperimentConfig {
    /// Reads a JSON config, resolving a relative CSV path against its directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut cfg: Self = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        if let GraphSource::Csv { path: csv } = &mut cfg.graph {
            if csv.is_relative() {
                if let Some(dir) = path.parent() {
                    *csv = dir.join(&*csv);
                }
            }
        }
        Ok(cfg)
    }

    fn validate(&self, n: usize) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if !(self.tau >= 0.0 && self.tau.is_finite()) {
            return bad(format!("tau must be finite and non-negative, got {}", self.tau));
        }
        if n == 0 {
            return bad("graph has no nodes".into());
        }
        if self.algo == Algo::Exhaustive && n > DENSE_LIMIT {
            return bad(format!("exhaustive search needs n <= {DENSE_LIMIT}, got {n}"));
        }
        match self.eps_mode {
            EpsMode::Exact if n > FULL_LIMIT => bad(format!("exact eps needs n <= {FULL_LIMIT}, got {n}")),
            EpsMode::Fixed(e) if !(e >= 0.0 && e.is_finite()) => bad(format!("fixed eps must be >= 0, got {e}")),
            EpsMode::Estimate { num_pairs: Some(0) } => bad("num_pairs must be positive".into()),
            _ => Ok(()),
        }?;
        NoiseModel::new(self.noise.kind(), 0)?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub eps: f64,
    pub value_raw: f64,
    pub value_filtered: f64,
    /// `value_filtered / value_raw`; absent when `value_raw` is zero.
    pub ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregates {
    pub count: usize,
    /// Trials left out because `value_raw` was zero.
    pub excluded: usize,
    pub min: Option<f64>,
    pub avg: Option<f64>,
    pub median: Option<f64>,
    /// Sample standard deviation (`n − 1` denominator); 0 for a single ratio.
    pub sd: Option<f64>,
}

impl Aggregates {
    pub fn of(records: &[TrialRecord]) -> Self {
        let mut r: Vec<f64> = records.iter().filter_map(|t| t.ratio).collect();
        let excluded = records.len() - r.len();
        if r.is_empty() {
            return Self { count: 0, excluded, min: None, avg: None, median: None, sd: None };
        }
        r.sort_by(f64::total_cmp);
        let k = r.len();
        let avg = r.iter().sum::<f64>() / k as f64;
        let median = if k % 2 == 1 { r[k / 2] } else { (r[k / 2 - 1] + r[k / 2]) / 2.0 };
        let sd = if k > 1 {
            (r.iter().map(|x| (x - avg) * (x - avg)).sum::<f64>() / (k - 1) as f64).sqrt()
        } else {
            0.0
        };
        Self { count: k, excluded, min: Some(r[0]), avg: Some(avg), median: Some(median), sd: Some(sd) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub n: usize,
    /// Sample size used by the ε estimator, when estimating.
    pub num_pairs: Option<usize>,
    pub trials: Vec<TrialRecord>,
    pub aggregates: Aggregates,
    pub runtime_secs: f64,
}

pub fn default_num_pairs(n: usize) -> usize {
    10 * n * n
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let started = Instant::now();
    let fixed_graph = match &cfg.graph {
        GraphSource::Csv { path } => Some(ingest_snap_csv(path)?.graph),
        _ => None,
    };
    let n = match (&cfg.graph, &fixed_graph) {
        (_, Some(g)) => g.node_count(),
        (GraphSource::Er { n, .. }, None) => *n,
        (GraphSource::Sbm { sizes, .. }, None) => sizes.iter().sum(),
        (GraphSource::Csv { .. }, None) => unreachable!(),
    };
    cfg.validate(n)?;
    let num_pairs = match cfg.eps_mode {
        EpsMode::Estimate { num_pairs } => Some(num_pairs.unwrap_or_else(|| default_num_pairs(n))),
        _ => None,
    };

    let trials = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(cfg, t, fixed_graph.as_ref(), num_pairs))
        .collect::<Result<Vec<_>>>()?;
    let aggregates = Aggregates::of(&trials);
    Ok(ExperimentReport {
        config: cfg.clone(),
        n,
        num_pairs,
        trials,
        aggregates,
        runtime_secs: started.elapsed().as_secs_f64(),
    })
}

fn run_trial(
    cfg: &ExperimentConfig,
    trial: usize,
    fixed_graph: Option<&WeightedGraph>,
    num_pairs: Option<usize>,
) -> Result<TrialRecord> {
    let seed = derive_key(cfg.master_seed, &[label::TRIAL, trial as u64]);
    let sub = |l: u64| derive_key(seed, &[l]);
    let graph = match (&cfg.graph, fixed_graph) {
        (_, Some(g)) => g.clone(),
        (GraphSource::Er { n, p }, None) => gen_er(*n, *p, sub(label::GRAPH))?,
        (GraphSource::Sbm { sizes, probs }, None) => gen_sbm(sizes, probs, sub(label::GRAPH))?,
        (GraphSource::Csv { .. }, None) => unreachable!(),
    };
    let noise = NoiseModel::new(cfg.noise.kind(), sub(label::NOISE))?;
    let f = noisy_function(CutFunction::new(graph), noise);

    let eps = match cfg.eps_mode {
        EpsMode::Fixed(e) => e,
        EpsMode::Exact => exact_epsilon(&f, ConstraintClass::Cross)?.epsilon,
        EpsMode::Estimate { .. } => estimate_epsilon(&f, num_pairs.unwrap_or(0), sub(label::ESTIMATE))?,
    };
    let g = filter_function(&f, eps)?;
    if cfg.eps_mode == EpsMode::Exact {
        if let Some(v) = verify_submodular(&g, subdist_core::TOLERANCE)? {
            return Err(Error::Spec(format!("trial {trial}: filtered function not submodular at {:?}", v.pair)));
        }
    }

    let algo_seed = sub(label::ALGORITHM);
    let s_f = maximize(cfg, &f, algo_seed)?;
    let s_g = maximize(cfg, &g, algo_seed)?;
    let value_raw = f.value(&s_f);
    let value_filtered = f.value(&s_g);
    let ratio = (value_raw != 0.0).then(|| value_filtered / value_raw);
    Ok(TrialRecord { trial, seed, eps, value_raw, value_filtered, ratio })
}

fn maximize<F: SetFunction + ?Sized>(cfg: &ExperimentConfig, f: &F, seed: u64) -> Result<Subset> {
    let n = f.ground_size();
    Ok(match cfg.algo {
        Algo::Exhaustive => exhaustive_max(f)?.best_set,
        Algo::LocalSearch => local_search(f, cfg.tau, &Subset::empty(n))?.best_set,
        Algo::Rdg => rdg(f, seed).best_set,
    })
}

/// CSV with columns `trial, seed, eps, value_raw, value_filtered, ratio`;
/// an excluded ratio is left empty.
pub fn write_csv<W: Write>(w: W, report: &ExperimentReport) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["trial", "seed", "eps", "value_raw", "value_filtered", "ratio"])?;
    for t in &report.trials {
        wtr.serialize((t.trial, t.seed, t.eps, t.value_raw, t.value_filtered, t.ratio))?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(w: W, report: &ExperimentReport) -> Result<()> {
    serde_json::to_writer_pretty(w, report)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(noise: NoiseSpec, algo: Algo, eps_mode: EpsMode) -> ExperimentConfig {
        ExperimentConfig {
            graph: GraphSource::Er { n: 10, p: 0.5 },
            noise,
            algo,
            trials: 4,
            eps_mode,
            master_seed: 7,
            tau: 0.0,
        }
    }

    #[test]
    fn zero_noise_gives_unit_ratios() {
        let r = run_experiment(&cfg(NoiseSpec::None, Algo::LocalSearch, EpsMode::Estimate { num_pairs: None })).unwrap();
        assert_eq!(r.num_pairs, Some(1000));
        for t in &r.trials {
            assert_eq!(t.eps, 0.0);
            assert_eq!(t.ratio, Some(1.0));
        }
    }

    #[test]
    fn exact_mode_runs() {
        let r = run_experiment(&cfg(NoiseSpec::Gaussian { sigma2: 5.0 }, Algo::Rdg, EpsMode::Exact)).unwrap();
        assert!(r.trials.iter().all(|t| t.eps > 0.0));
    }

    #[test]
    fn invalid_configs() {
        let mut c = cfg(NoiseSpec::None, Algo::Exhaustive, EpsMode::Exact);
        c.graph = GraphSource::Er { n: 15, p: 0.5 };
        assert!(matches!(run_experiment(&c), Err(Error::Config(_))));
        c.trials = 0;
        assert!(matches!(run_experiment(&c), Err(Error::Config(_))));
        let c = cfg(NoiseSpec::Gaussian { sigma2: -1.0 }, Algo::Rdg, EpsMode::Fixed(0.0));
        assert!(run_experiment(&c).is_err());
    }

    #[test]
    fn aggregates() {
        let rec = |ratio| TrialRecord { trial: 0, seed: 0, eps: 0.0, value_raw: 1.0, value_filtered: 1.0, ratio };
        let a = Aggregates::of(&[rec(Some(1.0)), rec(None), rec(Some(3.0)), rec(Some(2.0))]);
        assert_eq!((a.count, a.excluded), (3, 1));
        assert_eq!((a.min, a.avg, a.median, a.sd), (Some(1.0), Some(2.0), Some(2.0), Some(1.0)));
        assert_eq!(Aggregates::of(&[rec(None)]).avg, None);
    }

    #[test]
    fn csv_shape() {
        let mut r = run_experiment(&cfg(NoiseSpec::None, Algo::Rdg, EpsMode::Fixed(0.5))).unwrap();
        r.trials.truncate(3);
        let mut buf = Vec::new();
        write_csv(&mut buf, &r).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 4);
        r.trials.clear();
        let mut buf = Vec::new();
        write_csv(&mut buf, &r).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "trial,seed,eps,value_raw,value_filtered,ratio\n");
    }

    #[test]
    fn json_round_trip() {
        let r = run_experiment(&cfg(NoiseSpec::Rademacher { c: 0.3 }, Algo::Rdg, EpsMode::Estimate { num_pairs: Some(50) }))
            .unwrap();
        let mut buf = Vec::new();
        write_json(&mut buf, &r).unwrap();
        let back: ExperimentReport = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back, r);
    }
}
