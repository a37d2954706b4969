use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use subdist::builtin::LoadedFunction;
use subdist::format::{write_explicit, write_graph};
use subdist::harness::{run_experiment, write_csv, write_json, ExperimentConfig};
use subdist::ingest::ingest_snap_csv;
use subdist_core::constraints::{estimate_epsilon, exact_epsilon, ConstraintClass};
use subdist_core::distance::{exact_distance, DEFAULT_TOL};
use subdist_core::filter::{filter_function, filter_value};
use subdist_core::function::{to_explicit, Counting};
use subdist_core::generators::{gen_er, gen_sbm};
use subdist_core::lowerbounds::{make_fk, make_lbcross, make_lbdimin, make_log_block, nu};
use subdist_core::optimize::{exhaustive_max, greedy, local_search, rdg, OptResult};
use subdist_core::{ExplicitFunction, SetFunction, Subset};

#[derive(Parser)]
#[command(name = "subdist", version, about = "Workbench for approximately submodular set functions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Approximation parameter ε over a constraint class.
    #[command(subcommand)]
    Eps(EpsCmd),
    /// The cardinality-offset filter.
    #[command(subcommand)]
    Filter(FilterCmd),
    /// Extremal lower-bound functions.
    #[command(subcommand)]
    Lb(LbCmd),
    /// Exact ℓ∞ distance to the nearest submodular function.
    Distance {
        #[arg(long = "fn")]
        func: String,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        emit_nearest: Option<PathBuf>,
    },
    /// Maximize a set function.
    Opt(OptArgs),
    /// Graph generation and ingestion.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Seeded experiments.
    #[command(subcommand)]
    Exp(ExpCmd),
}

#[derive(Subcommand)]
enum EpsCmd {
    Exact {
        #[arg(long = "fn")]
        func: String,
        #[arg(long, value_parser = parse_class)]
        class: ConstraintClass,
    },
    /// Sampling estimate of ε (never above the exact full-class value).
    Estimate {
        #[arg(long = "fn")]
        func: String,
        #[arg(long)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum FilterCmd {
    Eval {
        #[arg(long = "fn")]
        func: String,
        #[arg(long)]
        eps: f64,
        /// Subset as a decimal bitmask.
        #[arg(long)]
        set: u64,
    },
    Export {
        #[arg(long = "fn")]
        func: String,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LbKind {
    Fk,
    Dimin,
    Cross,
    Log,
}

#[derive(Subcommand)]
enum LbCmd {
    /// Writes the function as an explicit table. `log` takes `--k` blocks of size `--n`.
    Make {
        #[arg(long, value_enum)]
        kind: LbKind,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Nu {
        #[arg(long = "fn")]
        func: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Exhaustive,
    Greedy,
    Local,
    Rdg,
}

#[derive(Args)]
struct OptArgs {
    #[arg(long, value_enum)]
    algo: AlgoArg,
    #[arg(long = "fn")]
    func: String,
    /// Optimize the filtered function instead of f.
    #[arg(long)]
    filtered: bool,
    #[arg(long, requires = "filtered", conflicts_with = "eps_estimate")]
    eps: Option<f64>,
    /// Estimate ε from this many sampled pairs.
    #[arg(long, requires = "filtered")]
    eps_estimate: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Greedy budget; defaults to n.
    #[arg(long)]
    budget: Option<usize>,
    /// Local-search improvement threshold.
    #[arg(long, default_value_t = 0.0)]
    tau: f64,
}

#[derive(Subcommand)]
enum GraphCmd {
    Gen {
        /// Erdős–Rényi: node count and edge probability.
        #[arg(long, num_args = 2, value_names = ["N", "P"], conflicts_with = "sbm", required_unless_present = "sbm")]
        er: Option<Vec<String>>,
        /// Stochastic block model: JSON files with part sizes and the probability matrix.
        #[arg(long, num_args = 2, value_names = ["SIZES", "PROBS"])]
        sbm: Option<Vec<PathBuf>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    Ingest {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum ExpCmd {
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write the full report with aggregates as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn parse_class(s: &str) -> Result<ConstraintClass, String> {
    s.parse().map_err(|_| format!("unknown class `{s}` (expected cross, dimin or full)"))
}

fn load(spec: &str) -> Result<LoadedFunction> {
    LoadedFunction::load(spec).with_context(|| format!("loading --fn {spec}"))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?))
}

fn print(v: Value) -> Result<()> {
    println!("{}", serde_json::to_string(&v)?);
    Ok(())
}

fn set_json(s: &Subset) -> Value {
    json!(s.to_indices())
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match Cli::parse().cmd {
        Cmd::Eps(c) => eps(c),
        Cmd::Filter(c) => filter(c),
        Cmd::Lb(c) => lb(c),
        Cmd::Distance { func, tol, emit_nearest } => {
            let f = load(&func)?;
            let r = exact_distance(&f, tol)?;
            if let Some(path) = emit_nearest {
                write_explicit(create(&path)?, &r.nearest)?;
            }
            print(json!({
                "t_star": r.t_star,
                "lower_bound": r.lower_bound,
                "certificate_pairs": r.certificate.pairs.len(),
            }))
        }
        Cmd::Opt(a) => opt(a),
        Cmd::Graph(c) => graph(c),
        Cmd::Exp(ExpCmd::Run { config, out, json }) => {
            let cfg = ExperimentConfig::load(&config).with_context(|| format!("reading {}", config.display()))?;
            let report = run_experiment(&cfg)?;
            write_csv(create(&out)?, &report)?;
            if let Some(path) = json {
                write_json(create(&path)?, &report)?;
            }
            print(json!({ "n": report.n, "num_pairs": report.num_pairs, "aggregates": report.aggregates }))
        }
    }
}

fn eps(c: EpsCmd) -> Result<()> {
    match c {
        EpsCmd::Exact { func, class } => {
            let f = load(&func)?;
            let r = exact_epsilon(&f, class)?;
            let n = f.ground_size();
            let (a, b) = match r.witness {
                Some(p) => {
                    let (a, b) = p.subsets(n);
                    (set_json(&a), set_json(&b))
                }
                None => (Value::Null, Value::Null),
            };
            print(json!({ "class": class.name(), "epsilon": r.epsilon, "witness_A": a, "witness_B": b }))
        }
        EpsCmd::Estimate { func, pairs, seed } => {
            let f = load(&func)?;
            let e = estimate_epsilon(&f, pairs, seed)?;
            print(json!({
                "class": "estimate",
                "epsilon": e,
                "witness_A": Value::Null,
                "witness_B": Value::Null,
                "pairs": pairs,
                "seed": seed,
            }))
        }
    }
}

fn filter(c: FilterCmd) -> Result<()> {
    match c {
        FilterCmd::Eval { func, eps, set } => {
            let f = load(&func)?;
            let s = Subset::from_mask(f.ground_size(), set)?;
            let v = filter_value(&f, eps, &s)?;
            print(json!({ "eps": eps, "set": set_json(&s), "value": v, "base": f.value(&s) }))
        }
        FilterCmd::Export { func, eps, out } => {
            let f = load(&func)?;
            let g = filter_function(&f, eps)?;
            write_explicit(create(&out)?, &to_explicit(&g)?)?;
            Ok(())
        }
    }
}

fn lb(c: LbCmd) -> Result<()> {
    match c {
        LbCmd::Make { kind, k, n, out } => {
            let need = |v: Option<usize>, name: &str| v.with_context(|| format!("--{name} is required for this kind"));
            let f: ExplicitFunction = match kind {
                LbKind::Fk => make_fk(need(k, "k")?)?.to_explicit()?,
                LbKind::Dimin => to_explicit(&make_lbdimin(need(n, "n")?)?)?,
                LbKind::Cross => to_explicit(&make_lbcross(need(n, "n")?)?)?,
                LbKind::Log => to_explicit(&make_log_block(need(k, "k")?, need(n, "n")?)?)?,
            };
            match out {
                Some(path) => write_explicit(create(&path)?, &f)?,
                None => write_explicit(std::io::stdout().lock(), &f)?,
            }
            Ok(())
        }
        LbCmd::Nu { func } => {
            let views = load(&func)?.block_views()?;
            let values: Vec<f64> = views.iter().map(nu).collect();
            let best = values.iter().copied().fold(0.0, f64::max);
            let layouts: Vec<_> = views.iter().map(|b| b.sizes().to_vec()).collect();
            print(json!({ "nu": best, "views": layouts, "values": values }))
        }
    }
}

fn run_algo<F: SetFunction + ?Sized>(a: &OptArgs, f: &F) -> Result<OptResult> {
    let n = f.ground_size();
    Ok(match a.algo {
        AlgoArg::Exhaustive => exhaustive_max(f)?,
        AlgoArg::Greedy => greedy(f, a.budget.unwrap_or(n))?,
        AlgoArg::Local => local_search(f, a.tau, &Subset::empty(n))?,
        AlgoArg::Rdg => rdg(f, a.seed),
    })
}

fn opt(a: OptArgs) -> Result<()> {
    let f = load(&a.func)?;
    let algo = match a.algo {
        AlgoArg::Exhaustive => "exhaustive",
        AlgoArg::Greedy => "greedy",
        AlgoArg::Local => "local",
        AlgoArg::Rdg => "rdg",
    };
    if !a.filtered {
        let counted = Counting::new(&f);
        let r = run_algo(&a, &counted)?;
        return print(json!({ "algo": algo, "set": set_json(&r.best_set), "value": r.best_value, "queries": counted.queries() }));
    }
    let eps = match (a.eps, a.eps_estimate) {
        (Some(e), None) => e,
        (None, Some(m)) => estimate_epsilon(&f, m, a.seed)?,
        _ => bail!("--filtered needs exactly one of --eps or --eps-estimate"),
    };
    let counted = Counting::new(filter_function(&f, eps)?);
    let r = run_algo(&a, &counted)?;
    print(json!({
        "algo": algo,
        "set": set_json(&r.best_set),
        "value": f.value(&r.best_set),
        "filtered_value": r.best_value,
        "eps": eps,
        "queries": counted.queries(),
    }))
}

fn graph(c: GraphCmd) -> Result<()> {
    match c {
        GraphCmd::Gen { er, sbm, seed, out } => {
            let g = match (er, sbm) {
                (Some(er), None) => {
                    let n: usize = er[0].parse().context("--er N must be an integer")?;
                    let p: f64 = er[1].parse().context("--er P must be a number")?;
                    gen_er(n, p, seed)?
                }
                (None, Some(files)) => {
                    let sizes: Vec<usize> = serde_json::from_str(&std::fs::read_to_string(&files[0])?)
                        .with_context(|| format!("reading sizes from {}", files[0].display()))?;
                    let probs: Vec<Vec<f64>> = serde_json::from_str(&std::fs::read_to_string(&files[1])?)
                        .with_context(|| format!("reading probs from {}", files[1].display()))?;
                    gen_sbm(&sizes, &probs, seed)?
                }
                _ => bail!("give exactly one of --er or --sbm"),
            };
            write_graph(create(&out)?, &g)?;
            print(json!({ "nodes": g.node_count(), "edges": g.edge_count() }))
        }
        GraphCmd::Ingest { csv, out } => {
            let r = ingest_snap_csv(&csv).with_context(|| format!("ingesting {}", csv.display()))?;
            write_graph(create(&out)?, &r.graph)?;
            print(json!({
                "nodes": r.graph.node_count(),
                "edges": r.graph.edge_count(),
                "overwrites": r.overwrites,
                "self_loops": r.self_loops,
                "out_of_range": r.out_of_range,
            }))
        }
    }
}
