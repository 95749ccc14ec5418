//! Exhaustive graphicality test for small sequences.
//!
//! Depth-first include/skip search over all triples in lexicographic order
//! on the vertices sorted by decreasing degree.

use crate::binom::max_degree;
use crate::hypergraph::{Edge, Hypergraph3, Vertex};
use crate::sequence::DegreeSequence;

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleStatus {
    Graphic(Hypergraph3),
    NonGraphic,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict {
    pub status: OracleStatus,
    pub nodes_explored: u64,
}

impl OracleVerdict {
    pub fn is_graphic(&self) -> bool {
        matches!(self.status, OracleStatus::Graphic(_))
    }
}

struct Search {
    triples: Vec<[usize; 3]>,
    /// `remaining[i * n + v]`: triples at index `>= i` containing `v`.
    remaining: Vec<u32>,
    residual: Vec<u64>,
    left: u64,
    chosen: Vec<usize>,
    nodes: u64,
    budget: u64,
    n: usize,
}

enum Outcome {
    Found,
    Exhausted,
    OutOfBudget,
}

impl Search {
    fn feasible(&self, i: usize) -> bool {
        let row = &self.remaining[i * self.n..(i + 1) * self.n];
        self.residual.iter().zip(row).all(|(&r, &m)| r <= m as u64)
    }

    fn dfs(&mut self, i: usize) -> Outcome {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Outcome::OutOfBudget;
        }
        if self.left == 0 {
            return Outcome::Found;
        }
        if i == self.triples.len() || !self.feasible(i) {
            return Outcome::Exhausted;
        }
        let t = self.triples[i];
        if t.iter().all(|&v| self.residual[v] > 0) {
            for &v in &t {
                self.residual[v] -= 1;
            }
            self.left -= 3;
            self.chosen.push(i);
            match self.dfs(i + 1) {
                Outcome::Exhausted => {}
                other => return other,
            }
            self.chosen.pop();
            self.left += 3;
            for &v in &t {
                self.residual[v] += 1;
            }
        }
        self.dfs(i + 1)
    }
}

pub fn is_graphic_exhaustive(d: &DegreeSequence, node_budget: u64) -> OracleVerdict {
    let n = d.len();
    let non_graphic = OracleVerdict { status: OracleStatus::NonGraphic, nodes_explored: 0 };
    if !d.sum().is_multiple_of(3) || d.degrees().iter().any(|&x| x > max_degree(n as u64)) {
        return non_graphic;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d.degrees()[b].cmp(&d.degrees()[a]).then(a.cmp(&b)));
    let residual: Vec<u64> = order.iter().map(|&v| d.degrees()[v]).collect();

    let mut triples = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                triples.push([a, b, c]);
            }
        }
    }
    let e = triples.len();
    let mut remaining = vec![0u32; (e + 1) * n];
    for i in (0..e).rev() {
        let (head, tail) = remaining.split_at_mut((i + 1) * n);
        head[i * n..].copy_from_slice(&tail[..n]);
        for &v in &triples[i] {
            head[i * n + v] += 1;
        }
    }
    let mut s = Search {
        left: residual.iter().sum(),
        triples,
        remaining,
        residual,
        chosen: Vec::new(),
        nodes: 0,
        budget: node_budget,
        n,
    };
    let status = match s.dfs(0) {
        Outcome::Found => {
            let mut h = Hypergraph3::new(n);
            for &i in &s.chosen {
                let [a, b, c] = s.triples[i].map(|v| order[v] as Vertex);
                h.add_edge(Edge::from_distinct(a, b, c)).expect("distinct triples");
            }
            OracleStatus::Graphic(h)
        }
        Outcome::Exhausted => OracleStatus::NonGraphic,
        Outcome::OutOfBudget => OracleStatus::BudgetExceeded,
    };
    OracleVerdict { status, nodes_explored: s.nodes }
}
