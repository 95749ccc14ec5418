//! Vertex partitions into large, intermediate and small parts, and edge types.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;

use crate::binom::binom_big;
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph3, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    Large,
    Intermediate,
    Small,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    labels: Vec<Part>,
}

impl VertexPartition {
    pub fn new(labels: Vec<Part>) -> Self {
        Self { labels }
    }

    /// First `k` vertices large, the rest small.
    pub fn two_part(n: usize, k: usize) -> Self {
        Self::new((0..n).map(|v| if v < k { Part::Large } else { Part::Small }).collect())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, v: Vertex) -> Part {
        self.labels[v as usize]
    }

    pub fn labels(&self) -> &[Part] {
        &self.labels
    }

    pub fn members(&self, part: Part) -> Vec<Vertex> {
        (0..self.labels.len() as Vertex).filter(|&v| self.labels[v as usize] == part).collect()
    }

    pub fn large(&self) -> Vec<Vertex> {
        self.members(Part::Large)
    }

    pub fn intermediate(&self) -> Vec<Vertex> {
        self.members(Part::Intermediate)
    }

    pub fn small(&self) -> Vec<Vertex> {
        self.members(Part::Small)
    }

    pub fn sizes(&self) -> [u64; 3] {
        let mut s = [0u64; 3];
        for l in &self.labels {
            s[*l as usize] += 1;
        }
        s
    }
}

/// Composition of an edge: how many endpoints are large, intermediate, small.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeType {
    pub large: u8,
    pub intermediate: u8,
    pub small: u8,
}

impl EdgeType {
    pub const fn new(large: u8, intermediate: u8, small: u8) -> Self {
        assert!(large + intermediate + small == 3);
        Self { large, intermediate, small }
    }

    pub const L3: Self = Self::new(3, 0, 0);
    pub const L2N1: Self = Self::new(2, 1, 0);
    pub const L1N2: Self = Self::new(1, 2, 0);
    pub const L2S1: Self = Self::new(2, 0, 1);
    pub const L1N1S1: Self = Self::new(1, 1, 1);
    pub const L1S2: Self = Self::new(1, 0, 2);
    pub const N2S1: Self = Self::new(0, 2, 1);
    pub const N1S2: Self = Self::new(0, 1, 2);
    pub const S3: Self = Self::new(0, 0, 3);
    pub const N3: Self = Self::new(0, 3, 0);

    pub const ALL: [Self; 10] = [
        Self::L3,
        Self::L2N1,
        Self::L1N2,
        Self::L2S1,
        Self::L1N1S1,
        Self::L1S2,
        Self::N2S1,
        Self::N1S2,
        Self::S3,
        Self::N3,
    ];

    pub const TWO_PART: [Self; 4] = [Self::L3, Self::L2S1, Self::L1S2, Self::S3];

    pub fn count(&self, part: Part) -> u8 {
        match part {
            Part::Large => self.large,
            Part::Intermediate => self.intermediate,
            Part::Small => self.small,
        }
    }

    /// Number of possible edges of this type given part sizes `[L, N, S]`.
    pub fn possible(&self, sizes: [u64; 3]) -> BigUint {
        binom_big(sizes[0], self.large as u64)
            * binom_big(sizes[1], self.intermediate as u64)
            * binom_big(sizes[2], self.small as u64)
    }
}

impl fmt::Display for EdgeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, tag) in [(self.large, 'L'), (self.intermediate, 'N'), (self.small, 'S')] {
            if c > 0 {
                write!(f, "{c}{tag}")?;
            }
        }
        Ok(())
    }
}

pub fn classify_edge(e: &Edge, p: &VertexPartition) -> Result<EdgeType> {
    let mut c = [0u8; 3];
    for v in e.vertices() {
        if v as usize >= p.len() {
            return Err(Error::VertexOutOfRange { vertex: v, n: p.len() });
        }
        c[p.label(v) as usize] += 1;
    }
    Ok(EdgeType::new(c[0], c[1], c[2]))
}

/// Number of edges of each type present in `h`.
pub fn type_counts(h: &Hypergraph3, p: &VertexPartition) -> Result<BTreeMap<EdgeType, u64>> {
    let mut m = BTreeMap::new();
    for e in h.edges() {
        *m.entry(classify_edge(e, p)?).or_insert(0) += 1;
    }
    Ok(m)
}

/// Degree mass that edges of type `ty` put on part `part`.
pub fn type_mass(counts: &BTreeMap<EdgeType, u64>, ty: EdgeType, part: Part) -> u64 {
    counts.get(&ty).copied().unwrap_or(0) * ty.count(part) as u64
}
