//! Text formats.
//!
//! Degree sequences are whitespace-separated non-negative integers. A
//! hypergraph file starts with `n m` followed by `m` lines `a b c`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph3, Vertex};
use crate::sequence::DegreeSequence;

pub fn parse_degree_sequence(text: &str) -> Result<DegreeSequence> {
    let mut v = Vec::new();
    for (i, line) in text.lines().enumerate() {
        for tok in line.split_whitespace() {
            let d = tok.parse::<u64>().map_err(|_| Error::Parse {
                line: i + 1,
                msg: format!("expected a non-negative integer, got {tok:?}"),
            })?;
            v.push(d);
        }
    }
    if v.is_empty() {
        return Err(Error::Parse { line: 1, msg: "empty degree sequence".into() });
    }
    Ok(DegreeSequence::new(v))
}

pub fn format_degree_sequence(d: &DegreeSequence) -> String {
    format!("{d}\n")
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph3> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
    let nums = |line: usize, s: &str| -> Result<Vec<u64>> {
        s.split_whitespace()
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|_| Error::Parse { line: line + 1, msg: format!("bad integer {t:?}") })
            })
            .collect()
    };
    let head = nums(hl, header)?;
    let [n, m] = head[..] else {
        return Err(Error::Parse { line: hl + 1, msg: "header must be `n m`".into() });
    };
    if n > Vertex::MAX as u64 {
        return Err(Error::Parse { line: hl + 1, msg: "too many vertices".into() });
    }
    let mut h = Hypergraph3::new(n as usize);
    let mut count = 0u64;
    for (i, line) in lines {
        let v = nums(i, line)?;
        let [a, b, c] = v[..] else {
            return Err(Error::Parse { line: i + 1, msg: "edge line must have 3 vertices".into() });
        };
        if a >= n || b >= n || c >= n {
            return Err(Error::Parse { line: i + 1, msg: format!("vertex out of range 0..{n}") });
        }
        let e = Edge::new(a as Vertex, b as Vertex, c as Vertex)
            .map_err(|err| Error::Parse { line: i + 1, msg: err.to_string() })?;
        h.add_edge(e).map_err(|err| Error::Parse { line: i + 1, msg: err.to_string() })?;
        count += 1;
    }
    if count != m {
        return Err(Error::Parse { line: hl + 1, msg: format!("header announces {m} edges, found {count}") });
    }
    Ok(h)
}

/// Header plus edges in lexicographic order.
pub fn format_hypergraph(h: &Hypergraph3) -> String {
    let mut s = String::with_capacity(16 * (h.edge_count() + 1));
    let _ = writeln!(s, "{} {}", h.n(), h.edge_count());
    for e in h.edges() {
        let [a, b, c] = e.vertices();
        let _ = writeln!(s, "{a} {b} {c}");
    }
    s
}
