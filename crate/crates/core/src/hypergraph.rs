//! 3-uniform hypergraphs with an incidence index.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::sequence::DegreeSequence;

pub type Vertex = u32;

/// A 3-set of vertices stored as a strictly increasing triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge([Vertex; 3]);

impl Edge {
    pub fn new(a: Vertex, b: Vertex, c: Vertex) -> Result<Self> {
        let mut v = [a, b, c];
        v.sort_unstable();
        if v[0] == v[1] || v[1] == v[2] {
            return Err(Error::InvalidInput(format!("edge needs 3 distinct vertices, got {a} {b} {c}")));
        }
        Ok(Self(v))
    }

    /// Caller guarantees the three vertices are distinct.
    pub(crate) fn from_distinct(a: Vertex, b: Vertex, c: Vertex) -> Self {
        let mut v = [a, b, c];
        v.sort_unstable();
        debug_assert!(v[0] < v[1] && v[1] < v[2]);
        Self(v)
    }

    pub fn vertices(&self) -> [Vertex; 3] {
        self.0
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    /// The two vertices other than `v`, if `v` is in the edge.
    pub fn others(&self, v: Vertex) -> Option<[Vertex; 2]> {
        let [a, b, c] = self.0;
        if v == a {
            Some([b, c])
        } else if v == b {
            Some([a, c])
        } else if v == c {
            Some([a, b])
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.0[0], self.0[1], self.0[2])
    }
}

/// Presence bitset indexed by colex rank, used up to this many vertices.
const BITSET_MAX_N: usize = 400;

fn colex_rank(e: &Edge) -> usize {
    let [a, b, c] = e.0.map(|v| v as usize);
    c * (c - 1) * (c - 2) / 6 + b * (b - 1) / 2 + a
}

#[derive(Debug, Clone)]
pub struct Hypergraph3 {
    n: usize,
    edge_count: usize,
    incidence: Vec<BTreeSet<Edge>>,
    present: Vec<u64>,
}

impl PartialEq for Hypergraph3 {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.incidence == other.incidence
    }
}

impl Eq for Hypergraph3 {}

impl Hypergraph3 {
    pub fn new(n: usize) -> Self {
        let bits = if n <= BITSET_MAX_N { n * n.saturating_sub(1) * n.saturating_sub(2) / 6 } else { 0 };
        Self { n, edge_count: 0, incidence: vec![BTreeSet::new(); n], present: vec![0; bits.div_ceil(64)] }
    }

    /// Builds a hypergraph, rejecting duplicates and out-of-range vertices.
    pub fn from_edges<I: IntoIterator<Item = Edge>>(n: usize, edges: I) -> Result<Self> {
        let mut h = Self::new(n);
        for e in edges {
            h.add_edge(e)?;
        }
        Ok(h)
    }

    /// The complete 3-graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut h = Self::new(n);
        let n = n as Vertex;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    h.insert_unchecked(Edge([a, b, c]));
                }
            }
        }
        h
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.incidence.iter().enumerate().flat_map(|(v, inc)| inc.iter().filter(move |e| e.0[0] as usize == v))
    }

    pub fn contains(&self, e: &Edge) -> bool {
        if e.0[2] as usize >= self.n {
            return false;
        }
        if self.present.is_empty() {
            return self.incidence[e.0[0] as usize].contains(e);
        }
        let r = colex_rank(e);
        self.present[r / 64] >> (r % 64) & 1 == 1
    }

    pub fn degree(&self, v: Vertex) -> u64 {
        self.incidence[v as usize].len() as u64
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.incidence.iter().map(|s| s.len() as u64).collect()
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence::new(self.degrees())
    }

    /// Edges containing `v`, in lexicographic order.
    pub fn incident(&self, v: Vertex) -> impl Iterator<Item = &Edge> + '_ {
        self.incidence[v as usize].iter()
    }

    fn check_vertices(&self, e: &Edge) -> Result<()> {
        match e.0.iter().find(|&&v| v as usize >= self.n) {
            Some(&v) => Err(Error::VertexOutOfRange { vertex: v, n: self.n }),
            None => Ok(()),
        }
    }

    pub fn add_edge(&mut self, e: Edge) -> Result<()> {
        self.check_vertices(&e)?;
        if self.contains(&e) {
            return Err(Error::EdgeExists(e));
        }
        self.insert_unchecked(e);
        Ok(())
    }

    pub fn remove_edge(&mut self, e: &Edge) -> Result<()> {
        if !self.contains(e) {
            return Err(Error::MissingEdge(*e));
        }
        for v in e.0 {
            self.incidence[v as usize].remove(e);
        }
        if !self.present.is_empty() {
            let r = colex_rank(e);
            self.present[r / 64] &= !(1u64 << (r % 64));
        }
        self.edge_count -= 1;
        Ok(())
    }

    fn insert_unchecked(&mut self, e: Edge) {
        for v in e.0 {
            self.incidence[v as usize].insert(e);
        }
        if !self.present.is_empty() {
            let r = colex_rank(&e);
            self.present[r / 64] |= 1u64 << (r % 64);
        }
        self.edge_count += 1;
    }

    /// Renames vertex `v` to `perm[v]`; `perm` must be a permutation.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::InvalidInput("permutation length differs from n".into()));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p as usize >= self.n || std::mem::replace(&mut seen[p as usize], true) {
                return Err(Error::InvalidInput("not a permutation".into()));
            }
        }
        let mut h = Self::new(self.n);
        for e in self.edges() {
            let [a, b, c] = e.0;
            h.insert_unchecked(Edge::from_distinct(perm[a as usize], perm[b as usize], perm[c as usize]));
        }
        Ok(h)
    }

    /// Recounts degrees from the edge set and compares with the index.
    pub fn check_invariants(&self) -> Result<()> {
        let mut deg = vec![0u64; self.n];
        let mut count = 0usize;
        for e in self.edges() {
            let [a, b, c] = e.0;
            if !(a < b && b < c) || c as usize >= self.n || !self.contains(e) {
                return Err(Error::Internal(format!("malformed edge {e}")));
            }
            count += 1;
            for v in e.0 {
                deg[v as usize] += 1;
                if !self.incidence[v as usize].contains(e) {
                    return Err(Error::Internal(format!("incidence of {v} misses {e}")));
                }
            }
        }
        if deg != self.degrees() || count != self.edge_count {
            return Err(Error::Internal("incidence index out of sync".into()));
        }
        if !self.present.is_empty() && self.present.iter().map(|w| w.count_ones() as usize).sum::<usize>() != count {
            return Err(Error::Internal("presence bitset out of sync".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn edge_normalizes() {
        let e = Edge::new(5, 1, 3).unwrap();
        assert_eq!(e.vertices(), [1, 3, 5]);
        assert_eq!(e.others(3), Some([1, 5]));
        assert_eq!(e.others(2), None);
        assert!(Edge::new(1, 1, 2).is_err());
    }

    #[test]
    fn add_remove() {
        let mut h = Hypergraph3::new(4);
        let e = Edge::new(0, 1, 2).unwrap();
        h.add_edge(e).unwrap();
        assert_eq!(h.add_edge(e), Err(Error::EdgeExists(e)));
        assert!(matches!(h.add_edge(Edge::new(0, 1, 4).unwrap()), Err(Error::VertexOutOfRange { .. })));
        assert_eq!(h.degrees(), vec![1, 1, 1, 0]);
        h.remove_edge(&e).unwrap();
        assert_eq!(h.remove_edge(&e), Err(Error::MissingEdge(e)));
        assert_eq!(h.edge_count(), 0);
    }

    #[test]
    fn large_graphs_skip_the_bitset() {
        let n = BITSET_MAX_N + 5;
        let mut h = Hypergraph3::new(n);
        let e = Edge::new(0, 7, n as u32 - 1).unwrap();
        h.add_edge(e).unwrap();
        assert!(h.contains(&e));
        assert_eq!(h.add_edge(e), Err(Error::EdgeExists(e)));
        h.check_invariants().unwrap();
        h.remove_edge(&e).unwrap();
        assert!(!h.contains(&e));
    }

    #[test]
    fn edges_iterate_lexicographically() {
        let es = [(2, 3, 4), (0, 3, 4), (1, 2, 4), (0, 1, 4), (0, 1, 2)];
        let h = Hypergraph3::from_edges(5, es.iter().map(|&(a, b, c)| Edge::new(a, b, c).unwrap())).unwrap();
        let got: Vec<Edge> = h.edges().copied().collect();
        let mut want = got.clone();
        want.sort_unstable();
        assert_eq!(got, want);
        assert_eq!(got.len(), 5);
    }

    #[test]
    fn complete_graph_degrees() {
        let h = Hypergraph3::complete(6);
        assert_eq!(h.edge_count(), 20);
        assert!(h.degrees().iter().all(|&d| d == 10));
        h.check_invariants().unwrap();
    }

    proptest! {
        #[test]
        fn handshake_identity(n in 3usize..10, raw in prop::collection::vec((0u32..10, 0u32..10, 0u32..10), 0..40)) {
            let mut h = Hypergraph3::new(n);
            for (a, b, c) in raw {
                let (a, b, c) = (a % n as u32, b % n as u32, c % n as u32);
                if let Ok(e) = Edge::new(a, b, c) {
                    let _ = h.add_edge(e);
                }
            }
            h.check_invariants().unwrap();
            prop_assert_eq!(h.degrees().iter().sum::<u64>(), 3 * h.edge_count() as u64);
        }

        #[test]
        fn relabel_preserves_multiset(n in 3usize..9, seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut h = Hypergraph3::new(n);
            for _ in 0..12 {
                let mut v: Vec<u32> = (0..n as u32).collect();
                v.shuffle(&mut rng);
                let _ = h.add_edge(Edge::new(v[0], v[1], v[2]).unwrap());
            }
            let mut perm: Vec<u32> = (0..n as u32).collect();
            perm.shuffle(&mut rng);
            let g = h.relabel(&perm).unwrap();
            for (v, &w) in perm.iter().enumerate() {
                prop_assert_eq!(g.degree(w), h.degree(v as u32));
            }
        }
    }
}
