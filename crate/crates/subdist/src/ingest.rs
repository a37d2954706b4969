//! SNAP signed-network CSV (`SOURCE,TARGET,RATING[,TIME]`) to an undirected
//! weighted graph.

use std::collections::HashMap;
use std::io::Read;
use std::path::Path;

use subdist_core::graph::{Edge, WeightedGraph};

use crate::error::{parse_err, Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct IngestReport {
    pub graph: WeightedGraph,
    /// Original node id for each compacted index.
    pub node_ids: Vec<i64>,
    /// Same-direction entries replaced by a later line.
    pub overwrites: usize,
    pub self_loops: usize,
    /// Edges whose final weight lies outside [-10, 10].
    pub out_of_range: usize,
}

pub fn ingest_snap_csv(path: impl AsRef<Path>) -> Result<IngestReport> {
    let file = std::fs::File::open(path)?;
    ingest_snap_reader(file)
}

pub fn ingest_snap_reader<R: Read>(r: R) -> Result<IngestReport> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(r);

    let mut index: HashMap<i64, usize> = HashMap::new();
    let mut node_ids = Vec::new();
    let mut directed: HashMap<(usize, usize), f64> = HashMap::new();
    let mut order: Vec<(usize, usize)> = Vec::new();
    let mut overwrites = 0;
    let mut self_loops = 0;
    let mut rows = 0;

    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(rows + 1, |p| p.line() as usize);
        rows += 1;
        if rec.len() < 3 || rec.len() > 4 {
            return Err(parse_err(line, format!("expected 3 or 4 fields, found {}", rec.len())));
        }
        let src: i64 = rec[0].parse().map_err(|e| parse_err(line, format!("bad SOURCE: {e}")))?;
        let dst: i64 = rec[1].parse().map_err(|e| parse_err(line, format!("bad TARGET: {e}")))?;
        let rating: f64 = rec[2].parse().map_err(|e| parse_err(line, format!("bad RATING: {e}")))?;
        if !rating.is_finite() {
            return Err(parse_err(line, "RATING must be finite"));
        }
        let mut id = |raw: i64| {
            *index.entry(raw).or_insert_with(|| {
                node_ids.push(raw);
                node_ids.len() - 1
            })
        };
        let (u, v) = (id(src), id(dst));
        if u == v {
            self_loops += 1;
            continue;
        }
        match directed.insert((u, v), rating) {
            Some(_) => overwrites += 1,
            None => order.push((u, v)),
        }
    }
    if rows == 0 {
        return Err(Error::Spec("empty CSV file".into()));
    }

    let mut edges = Vec::new();
    let mut emitted = std::collections::HashSet::new();
    let mut out_of_range = 0;
    for &(u, v) in &order {
        let key = (u.min(v), u.max(v));
        if !emitted.insert(key) {
            continue;
        }
        let w = match directed.get(&(v, u)) {
            Some(&back) => (directed[&(u, v)] + back) / 2.0,
            None => directed[&(u, v)],
        };
        if !(-10.0..=10.0).contains(&w) {
            out_of_range += 1;
        }
        edges.push(Edge { u: key.0, v: key.1, w });
    }
    if out_of_range > 0 {
        log::warn!("{out_of_range} edge weights fall outside [-10, 10]");
    }
    if overwrites > 0 {
        log::info!("{overwrites} duplicate directed entries resolved last-wins");
    }
    let graph = WeightedGraph::new(node_ids.len(), edges)?;
    Ok(IngestReport {
        graph,
        node_ids,
        overwrites,
        self_loops,
        out_of_range,
    })
}
