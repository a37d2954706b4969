//! Text formats.
//!
//! Explicit function: a header `n <int>` followed by `2^n` lines
//! `<bitmask> <value>` in increasing bitmask order.
//!
//! Graph: a header `nodes <int>` followed by one `<u> <v> <w>` line per edge.
//!
//! Blank lines and lines starting with `#` are ignored in both.

use std::io::{BufRead, Write};

use subdist_core::graph::{Edge, WeightedGraph};
use subdist_core::subset::require_dense;
use subdist_core::{ExplicitFunction, SetFunction};

use crate::error::{parse_err, Result};

/// What a text file holds, judged by its header keyword.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileKind {
    Explicit,
    Graph,
}

struct Lines<R> {
    inner: std::io::Lines<R>,
    line: usize,
}

impl<R: BufRead> Lines<R> {
    fn new(r: R) -> Self {
        Self { inner: r.lines(), line: 0 }
    }

    /// Next meaningful line with its 1-based number.
    fn next(&mut self) -> Result<Option<(usize, String)>> {
        for l in self.inner.by_ref() {
            self.line += 1;
            let l = l?;
            let t = l.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            return Ok(Some((self.line, t.to_string())));
        }
        Ok(None)
    }
}

fn header(line: usize, text: &str, keyword: &str) -> Result<usize> {
    let mut it = text.split_whitespace();
    if it.next() != Some(keyword) {
        return Err(parse_err(line, format!("expected header `{keyword} <int>`")));
    }
    let v = it
        .next()
        .ok_or_else(|| parse_err(line, "missing size in header"))?
        .parse()
        .map_err(|e| parse_err(line, format!("bad size: {e}")))?;
    if it.next().is_some() {
        return Err(parse_err(line, "trailing tokens in header"));
    }
    Ok(v)
}

fn field<T: std::str::FromStr>(line: usize, tok: Option<&str>, name: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    tok.ok_or_else(|| parse_err(line, format!("missing {name}")))?
        .parse()
        .map_err(|e| parse_err(line, format!("bad {name}: {e}")))
}

pub fn detect_kind(text: &str) -> Option<FileKind> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))?;
    match first.split_whitespace().next()? {
        "n" => Some(FileKind::Explicit),
        "nodes" => Some(FileKind::Graph),
        _ => None,
    }
}

pub fn read_explicit<R: BufRead>(r: R) -> Result<ExplicitFunction> {
    let mut lines = Lines::new(r);
    let (hl, h) = lines.next()?.ok_or_else(|| parse_err(1, "empty input"))?;
    let n = header(hl, &h, "n")?;
    require_dense(n, "explicit function file")?;
    let size = 1usize << n;
    let mut table = Vec::with_capacity(size);
    while let Some((line, text)) = lines.next()? {
        let mut it = text.split_whitespace();
        let mask: u64 = field(line, it.next(), "bitmask")?;
        let value: f64 = field(line, it.next(), "value")?;
        if it.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
        if mask != table.len() as u64 {
            return Err(parse_err(line, format!("expected bitmask {}, found {mask}", table.len())));
        }
        if !value.is_finite() {
            return Err(parse_err(line, "value must be finite"));
        }
        table.push(value);
    }
    if table.len() != size {
        return Err(parse_err(lines.line, format!("expected {size} entries, found {}", table.len())));
    }
    Ok(ExplicitFunction::new(n, table)?)
}

pub fn write_explicit<W: Write>(mut w: W, f: &ExplicitFunction) -> Result<()> {
    writeln!(w, "n {}", f.ground_size())?;
    for (m, v) in f.table().iter().enumerate() {
        writeln!(w, "{m} {v}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_graph<R: BufRead>(r: R) -> Result<WeightedGraph> {
    let mut lines = Lines::new(r);
    let (hl, h) = lines.next()?.ok_or_else(|| parse_err(1, "empty input"))?;
    let nodes = header(hl, &h, "nodes")?;
    let mut edges = Vec::new();
    while let Some((line, text)) = lines.next()? {
        let mut it = text.split_whitespace();
        let u = field(line, it.next(), "u")?;
        let v = field(line, it.next(), "v")?;
        let w = field(line, it.next(), "w")?;
        if it.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
        edges.push(Edge { u, v, w });
    }
    Ok(WeightedGraph::new(nodes, edges)?)
}

pub fn write_graph<W: Write>(mut w: W, g: &WeightedGraph) -> Result<()> {
    writeln!(w, "nodes {}", g.node_count())?;
    for e in g.edges() {
        writeln!(w, "{} {} {}", e.u, e.v, e.w)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_round_trip() {
        let f = ExplicitFunction::from_fn(3, |m| m as f64 * 0.1 - 1e-20).unwrap();
        let mut buf = Vec::new();
        write_explicit(&mut buf, &f).unwrap();
        assert_eq!(read_explicit(&buf[..]).unwrap(), f);
    }

    #[test]
    fn explicit_rejects_out_of_order() {
        let err = read_explicit("n 1\n1 0\n0 1\n".as_bytes()).unwrap_err();
        assert!(err.to_string().starts_with("line 2"), "{err}");
    }

    #[test]
    fn explicit_rejects_short_table() {
        assert!(read_explicit("n 2\n0 0\n1 1\n".as_bytes()).is_err());
    }

    #[test]
    fn graph_round_trip() {
        let g = WeightedGraph::from_triples(4, &[(0, 1, 1.5), (2, 3, -2.0)]).unwrap();
        let mut buf = Vec::new();
        write_graph(&mut buf, &g).unwrap();
        assert_eq!(read_graph(&buf[..]).unwrap(), g);
    }

    #[test]
    fn graph_errors_carry_line() {
        let err = read_graph("nodes 2\n# c\n0 1 x\n".as_bytes()).unwrap_err();
        assert!(err.to_string().starts_with("line 3"), "{err}");
    }

    #[test]
    fn kinds() {
        assert_eq!(detect_kind("# x\nn 2\n"), Some(FileKind::Explicit));
        assert_eq!(detect_kind("nodes 3\n"), Some(FileKind::Graph));
        assert_eq!(detect_kind("hello"), None);
    }
}
