//! The embedding gadget: a critical hypergraph with `m` large vertices
//! carved out as an intermediate part `V_N` that hosts an arbitrary input
//! sequence `D0`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::binom::{choose2, max_degree};
use crate::critical::{critical_hypergraph, f_star, params, CriticalCase};
use crate::error::{Error, Result};
use crate::exact::{from_u64, to_f64};
use crate::hypergraph::{Edge, Hypergraph3, Vertex};
use crate::partition::{classify_edge, type_counts, type_mass, EdgeType, Part, VertexPartition};
use crate::sequence::DegreeSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionCase {
    /// The critical hypergraph is in case C1.
    Case1,
    /// The critical hypergraph is in case C2.
    Case2,
}

impl fmt::Display for ReductionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Case1 => "Case1",
            Self::Case2 => "Case2",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ReductionArtifacts {
    pub d0: DegreeSequence,
    pub m: usize,
    pub epsilon: BigRational,
    pub n: u64,
    pub d_max: u64,
    pub k_star: u64,
    pub case: ReductionCase,
    /// `V_N = 0..m`, large `m..k_star`, small `k_star..n`.
    pub partition: VertexPartition,
    pub h: Hypergraph3,
    pub h_prime: Hypergraph3,
    pub d_a: DegreeSequence,
    pub d_a_prime: DegreeSequence,
    pub d_b: DegreeSequence,
}

/// `ceil((2m)^(1/eps))`, exact for `eps = p/q` with small `p` and `q`.
pub fn gadget_size(m: u64, epsilon: &BigRational) -> Result<u64> {
    if !epsilon.is_positive() || *epsilon >= BigRational::one() {
        return Err(Error::InvalidInput(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    let base = 2 * m;
    let est = (base as f64).powf(1.0 / to_f64(epsilon)).ceil();
    if !est.is_finite() || est > 1e9 {
        return Err(Error::InvalidInput("gadget would exceed 10^9 vertices".into()));
    }
    let (p, q) = match (epsilon.numer().to_u32(), epsilon.denom().to_u32()) {
        (Some(p), Some(q)) if q <= 1000 => (p as usize, q as usize),
        _ => return Ok(est as u64),
    };
    // smallest n with n^p >= base^q
    let target = num_traits::pow(BigUint::from(base), q);
    let ok = |n: u64| num_traits::pow(BigUint::from(n), p) >= target;
    let mut n = (est as u64).max(1);
    while n > 1 && ok(n - 1) {
        n -= 1;
    }
    while !ok(n) {
        n += 1;
    }
    Ok(n)
}

fn removed_in_h_prime(t: EdgeType, case: ReductionCase) -> bool {
    t == EdgeType::N3 || t == EdgeType::N2S1 || t == EdgeType::N1S2 || (case == ReductionCase::Case1 && t == EdgeType::L1N1S1)
}

pub fn embed(d0: &DegreeSequence, c2: &BigRational, epsilon: &BigRational) -> Result<ReductionArtifacts> {
    if d0.is_empty() {
        return Err(Error::InvalidInput("D0 is empty".into()));
    }
    if !c2.is_positive() || *c2 >= BigRational::one() {
        return Err(Error::InvalidInput(format!("c2 must lie in (0, 1), got {c2}")));
    }
    let m = d0.len();
    let n = gadget_size(m as u64, epsilon)?;
    let d_max = (c2 * from_u64(max_degree(n))).floor().to_integer().to_u64().expect("non-negative");
    let best = f_star(n, d_max).ok_or_else(|| Error::Precondition(format!("no valid k for n = {n}, d_max = {d_max}")))?;
    let k_star = best.k;
    if k_star <= m as u64 {
        return Err(Error::Precondition(format!("m = {m} too small: k* = {k_star} leaves no large vertex outside V_N (n = {n}, d_max = {d_max})")));
    }
    if d_max <= choose2(k_star - 1) {
        return Err(Error::Precondition(format!(
            "m = {m} too small: d_max = {d_max} <= C(k*-1, 2) = {} (n = {n}, k* = {k_star})",
            choose2(k_star - 1)
        )));
    }
    let p = params(n, k_star, d_max)?;
    let case = match p.case() {
        CriticalCase::C1 => ReductionCase::Case1,
        CriticalCase::C2 => ReductionCase::Case2,
        CriticalCase::C0 => unreachable!("d_max > C(k*-1, 2)"),
    };
    let (h, _) = critical_hypergraph(&p, case == ReductionCase::Case1)?;
    let partition = VertexPartition::new(
        (0..n)
            .map(|v| {
                if v < m as u64 {
                    Part::Intermediate
                } else if v < k_star {
                    Part::Large
                } else {
                    Part::Small
                }
            })
            .collect(),
    );
    let mut h_prime = h.clone();
    let doomed: Vec<Edge> = h
        .edges()
        .filter(|e| removed_in_h_prime(classify_edge(e, &partition).expect("in range"), case))
        .copied()
        .collect();
    for e in &doomed {
        h_prime.remove_edge(e)?;
    }
    let d_a = h.degree_sequence();
    let d_a_prime = h_prime.degree_sequence();
    let mut b = d_a_prime.clone().into_vec();
    for (x, add) in b.iter_mut().zip(d0.degrees()) {
        *x += add;
    }
    Ok(ReductionArtifacts {
        d0: d0.clone(),
        m,
        epsilon: epsilon.clone(),
        n,
        d_max,
        k_star,
        case,
        partition,
        h,
        h_prime,
        d_a,
        d_a_prime,
        d_b: DegreeSequence::new(b),
    })
}

/// Edge types that must be complete around `V_N`, and those that must be absent.
fn n_structure(case: ReductionCase) -> (Vec<EdgeType>, Vec<EdgeType>) {
    let mut full = vec![EdgeType::L2N1, EdgeType::L1N2];
    let mut empty = vec![EdgeType::N2S1, EdgeType::N1S2];
    match case {
        ReductionCase::Case1 => empty.push(EdgeType::L1N1S1),
        ReductionCase::Case2 => full.push(EdgeType::L1N1S1),
    }
    (full, empty)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    /// Edges of the mandatory types that are absent.
    pub missing: u64,
    /// Edges meeting `V_N` (other than inside it) of forbidden types.
    pub unexpected: u64,
    pub counts: BTreeMap<EdgeType, u64>,
}

impl StructureReport {
    pub fn matches(&self) -> bool {
        self.missing == 0 && self.unexpected == 0
    }
}

/// Compares the edges around `V_N` with the complete/empty pattern of `H'`.
pub fn structure_report(g: &Hypergraph3, a: &ReductionArtifacts) -> Result<StructureReport> {
    let counts = type_counts(g, &a.partition)?;
    let sizes = a.partition.sizes();
    let (full, empty) = n_structure(a.case);
    let mut missing = 0u64;
    for t in &full {
        let want = t.possible(sizes).to_u64().unwrap_or(u64::MAX);
        missing += want.saturating_sub(counts.get(t).copied().unwrap_or(0));
    }
    let unexpected = empty.iter().map(|t| counts.get(t).copied().unwrap_or(0)).sum();
    Ok(StructureReport { missing, unexpected, counts })
}

#[derive(Debug, Clone, PartialEq)]
pub struct StructuralChecks {
    pub inner_empty: bool,
    pub n_s_empty: bool,
    pub l_n_complete: bool,
    /// No 1L1N1S edges in Case 1, all of them in Case 2.
    pub lns_pattern: bool,
    /// Case 1: `[2L1S]_L = 2 [2L1S]_S > 0`; Case 2: `2 [1L2S]_L = [1L2S]_S > 0`.
    pub tally_identity: bool,
    /// `Σ_L / Σ_S` over `H'`.
    pub sigma_ratio: f64,
    /// Case 1: ratio above 2; Case 2: ratio above 1/2.
    pub ratio_bound: bool,
    pub d_b_consistent: bool,
}

impl StructuralChecks {
    pub fn all(&self) -> bool {
        self.inner_empty
            && self.n_s_empty
            && self.l_n_complete
            && self.lns_pattern
            && self.tally_identity
            && self.ratio_bound
            && self.d_b_consistent
    }
}

pub fn structural_checks(a: &ReductionArtifacts) -> Result<StructuralChecks> {
    let counts = type_counts(&a.h_prime, &a.partition)?;
    let sizes = a.partition.sizes();
    let count = |t: EdgeType| counts.get(&t).copied().unwrap_or(0);
    let possible = |t: EdgeType| t.possible(sizes).to_u64().unwrap_or(u64::MAX);
    let lns_pattern = match a.case {
        ReductionCase::Case1 => count(EdgeType::L1N1S1) == 0,
        ReductionCase::Case2 => count(EdgeType::L1N1S1) == possible(EdgeType::L1N1S1),
    };
    let tally_identity = match a.case {
        ReductionCase::Case1 => {
            let l = type_mass(&counts, EdgeType::L2S1, Part::Large);
            l > 0 && l == 2 * type_mass(&counts, EdgeType::L2S1, Part::Small)
        }
        ReductionCase::Case2 => {
            let l = type_mass(&counts, EdgeType::L1S2, Part::Large);
            l > 0 && 2 * l == type_mass(&counts, EdgeType::L1S2, Part::Small)
        }
    };
    let deg = a.d_a_prime.degrees();
    let sum_of = |part: Part| -> u64 { a.partition.members(part).iter().map(|&v| deg[v as usize]).sum() };
    let (sl, ss) = (sum_of(Part::Large), sum_of(Part::Small));
    let ratio_bound = match a.case {
        ReductionCase::Case1 => sl > 2 * ss,
        ReductionCase::Case2 => 2 * sl > ss,
    };
    let d_b_consistent = a.d_b.len() == a.d_a_prime.len()
        && a.d_b.degrees().iter().zip(deg).enumerate().all(|(i, (b, ap))| {
            let add = if i < a.m { a.d0.degrees()[i] } else { 0 };
            *b == ap + add
        });
    Ok(StructuralChecks {
        inner_empty: count(EdgeType::N3) == 0,
        n_s_empty: count(EdgeType::N2S1) == 0 && count(EdgeType::N1S2) == 0,
        l_n_complete: count(EdgeType::L2N1) == possible(EdgeType::L2N1) && count(EdgeType::L1N2) == possible(EdgeType::L1N2),
        lns_pattern,
        tally_identity,
        sigma_ratio: sl as f64 / ss as f64,
        ratio_bound,
        d_b_consistent,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MembershipReport {
    /// `c1* C(n-1,2) - n^(1+eps)`.
    pub lower_bound: f64,
    /// `c2 C(n-1,2)` is implied by `d_max`; every degree is at most `d_max`.
    pub upper_ok: bool,
    pub lower_ok: bool,
    pub mod3_ok: bool,
    /// `d_i - lower_bound` per vertex.
    pub margins: Vec<f64>,
    /// Smallest entry of `margins`.
    pub min_margin: f64,
    /// `(c1* C(n-1,2) - min d) / n^(1+eps)`: the share of the slack the
    /// smallest degree consumes. At most 1 iff the lower bound holds.
    pub slack_used: f64,
}

/// Checks `D_B` against the relaxed band. Small `m` may fail the lower
/// bound; that is reported, not treated as an error.
pub fn verify_relaxed_membership(a: &ReductionArtifacts, c1_star: f64) -> MembershipReport {
    let b = max_degree(a.n) as f64;
    let slack = (a.n as f64).powf(1.0 + to_f64(&a.epsilon));
    let lower = c1_star * b - slack;
    let margins: Vec<f64> = a.d_b.degrees().iter().map(|&d| d as f64 - lower).collect();
    let min = margins.iter().copied().fold(f64::INFINITY, f64::min);
    MembershipReport {
        lower_bound: lower,
        upper_ok: a.d_b.degrees().iter().all(|&d| d <= a.d_max),
        lower_ok: min >= 0.0,
        mod3_ok: a.d_b.sum().is_multiple_of(3),
        margins,
        min_margin: min,
        slack_used: (slack - min) / slack,
    }
}

/// `H' ⊔ G0`, with vertex `i` of `G0` placed on `V_N[i] = i`.
pub fn compose_realization(a: &ReductionArtifacts, g0: &Hypergraph3) -> Result<Hypergraph3> {
    if g0.n() != a.m {
        return Err(Error::Precondition(format!("G0 has {} vertices, D0 has {}", g0.n(), a.m)));
    }
    if g0.degrees() != a.d0.degrees() {
        return Err(Error::Precondition("G0 does not realize D0".into()));
    }
    let mut g = a.h_prime.clone();
    for e in g0.edges() {
        g.add_edge(*e).map_err(|err| Error::Internal(format!("edge collision with H': {err}")))?;
    }
    if g.degrees() != a.d_b.degrees() {
        return Err(Error::Internal("composition does not realize D_B".into()));
    }
    Ok(g)
}

/// Degree sequence of `G[V_N]` for a realization `G` of `D_B`, with the
/// structure report for the edges around `V_N`.
pub fn extract_inner(g: &Hypergraph3, a: &ReductionArtifacts) -> Result<(DegreeSequence, StructureReport)> {
    if g.n() as u64 != a.n || g.degrees() != a.d_b.degrees() {
        return Err(Error::Precondition("G does not realize D_B".into()));
    }
    let mut inner = vec![0u64; a.m];
    for e in g.edges() {
        let vs = e.vertices();
        if vs.iter().all(|&v| (v as usize) < a.m) {
            for v in vs {
                inner[v as usize] += 1;
            }
        }
    }
    Ok((DegreeSequence::new(inner), structure_report(g, a)?))
}

/// Vertices of `V_N` in order.
pub fn inner_vertices(a: &ReductionArtifacts) -> Vec<Vertex> {
    (0..a.m as Vertex).collect()
}
