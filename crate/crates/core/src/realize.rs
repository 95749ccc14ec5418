//! Realizations in the always-graphic regime.
//!
//! An extremal sequence `(d_max^k, d_int, d_min^(n-k-1))` with
//! `d_min >= g(n, k, d_max)` is realized from the critical hypergraph, and any
//! sequence it majorizes is then reached by balancing flips.

use std::fmt;

use crate::binom::max_degree;
use crate::critical::{critical_hypergraph, g_star, params, Argmax};
use crate::error::{Error, Result};
use crate::hingeflip::{apply_flip, equalize, find_balancing_flip, morph_to_target, EqualizeMode};
use crate::hypergraph::{Edge, Hypergraph3, Vertex};
use crate::sequence::DegreeSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExtremalSpec {
    pub n: u64,
    pub k: u64,
    pub d_min: u64,
    pub d_int: u64,
    pub d_max: u64,
}

impl ExtremalSpec {
    pub fn sum(&self) -> u128 {
        (self.n - self.k - 1) as u128 * self.d_min as u128 + self.d_int as u128 + self.k as u128 * self.d_max as u128
    }

    /// `k` copies of `d_max`, then `d_int`, then `d_min`.
    pub fn degree_sequence(&self) -> DegreeSequence {
        let mut v = vec![self.d_max; self.k as usize];
        v.push(self.d_int);
        v.extend(std::iter::repeat_n(self.d_min, (self.n - self.k - 1) as usize));
        DegreeSequence::new(v)
    }

    /// Checks the shape, divisibility and `d_min >= g(n, k, d_max)`.
    pub fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Precondition(m));
        if self.k == 0 || self.k + 2 > self.n {
            return bad(format!("need 1 <= k <= n-2, got k = {} for n = {}", self.k, self.n));
        }
        if !(self.d_min <= self.d_int && self.d_int <= self.d_max && self.d_max <= max_degree(self.n)) {
            return bad(format!("need d_min <= d_int <= d_max <= C(n-1,2), got {self}"));
        }
        if !self.sum().is_multiple_of(3) {
            return bad(format!("degree sum {} of {self} is not divisible by 3", self.sum()));
        }
        let g = params(self.n, self.k, self.d_max)?.g()?;
        if (self.d_min as i64) < g {
            return bad(format!("d_min = {} is below g = {g}", self.d_min));
        }
        Ok(())
    }
}

impl fmt::Display for ExtremalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} k={} d_min={} d_int={} d_max={}",
            self.n, self.k, self.d_min, self.d_int, self.d_max
        )
    }
}

/// Triples in lexicographic order that are absent from the graph at the
/// time they are reached.
struct TripleCursor {
    n: Vertex,
    next: [Vertex; 3],
}

impl TripleCursor {
    fn new(n: usize) -> Self {
        Self { n: n as Vertex, next: [0, 1, 2] }
    }

    fn next_absent(&mut self, h: &Hypergraph3) -> Option<Edge> {
        let n = self.n;
        loop {
            let [a, b, c] = self.next;
            if a + 2 >= n || c >= n {
                return None;
            }
            self.next = if c + 1 < n {
                [a, b, c + 1]
            } else if b + 2 < n {
                [a, b + 1, b + 2]
            } else {
                [a + 1, a + 2, a + 3]
            };
            let e = Edge::from_distinct(a, b, c);
            if !h.contains(&e) {
                return Some(e);
            }
        }
    }
}

fn min_degree_vertex(h: &Hypergraph3, vs: &[Vertex]) -> Option<Vertex> {
    vs.iter().copied().min_by_key(|&v| (h.degree(v), v))
}

fn max_degree_vertex(h: &Hypergraph3, vs: &[Vertex]) -> Option<Vertex> {
    vs.iter().copied().max_by_key(|&v| (h.degree(v), std::cmp::Reverse(v)))
}

fn flip(h: &mut Hypergraph3, donor: Vertex, recipient: Vertex) -> Result<()> {
    let f = find_balancing_flip(h, donor, recipient).map_err(|e| match e {
        Error::Precondition(m) => Error::Internal(m),
        other => other,
    })?;
    apply_flip(h, &f)
}

/// Realizes an extremal sequence. The first `k` vertices get `d_max`; the
/// vertex carrying `d_int` is a small vertex.
pub fn realize_extremal(spec: &ExtremalSpec) -> Result<Hypergraph3> {
    spec.check()?;
    let p = params(spec.n, spec.k, spec.d_max)?;
    let (mut h, _) = critical_hypergraph(&p, false)?;
    let (n, k) = (spec.n as Vertex, spec.k as Vertex);
    let large: Vec<Vertex> = (0..k).collect();
    let small: Vec<Vertex> = (k..n).collect();
    let v_int = max_degree_vertex(&h, &small).expect("k <= n-2 leaves small vertices");
    let rest: Vec<Vertex> = small.iter().copied().filter(|&v| v != v_int).collect();

    if h.degree(v_int) > spec.d_int {
        return Err(Error::Internal(format!("small degree {} already exceeds d_int", h.degree(v_int))));
    }
    if h.degree(v_int) < spec.d_int {
        let mut with_int: Vec<Edge> = (0..n)
            .filter(|&a| a != v_int)
            .flat_map(|a| (a + 1..n).filter(move |&b| b != v_int).map(move |b| Edge::from_distinct(v_int, a, b)))
            .collect();
        with_int.sort_unstable();
        let mut it = with_int.into_iter().filter(|e| !h.contains(e)).collect::<Vec<_>>().into_iter();
        while h.degree(v_int) < spec.d_int {
            let e = it.next().ok_or_else(|| Error::Internal("no absent edge through v_int".into()))?;
            h.add_edge(e)?;
        }
    }

    let s = spec.sum();
    let s_now = 3 * h.edge_count() as u128;
    if s_now > s {
        return Err(Error::Internal(format!("degree sum {s_now} already above {s}")));
    }
    let mut cursor = TripleCursor::new(n as usize);
    for _ in 0..(s - s_now) / 3 {
        let e = cursor.next_absent(&h).ok_or_else(|| Error::Internal("ran out of absent edges".into()))?;
        h.add_edge(e)?;
    }

    while let Some(v) = max_degree_vertex(&h, &large).filter(|&v| h.degree(v) > spec.d_max) {
        let r = min_degree_vertex(&h, &rest).ok_or_else(|| Error::Internal("no small recipient".into()))?;
        flip(&mut h, v, r)?;
    }
    while h.degree(v_int) > spec.d_int {
        let r = min_degree_vertex(&h, &rest).ok_or_else(|| Error::Internal("no small recipient".into()))?;
        flip(&mut h, v_int, r)?;
    }
    equalize(&mut h, &rest, EqualizeMode::Regular(spec.d_min)).map_err(|e| Error::Internal(e.to_string()))?;

    let ok = large.iter().all(|&v| h.degree(v) == spec.d_max)
        && h.degree(v_int) == spec.d_int
        && rest.iter().all(|&v| h.degree(v) == spec.d_min);
    if !ok {
        return Err(Error::Internal(format!("extremal construction for {spec} ended at {:?}", h.degrees())));
    }
    Ok(h)
}

/// Splits `S` as `(n-k-1) d_min + d_int + k d_max` with the smallest `k`.
pub fn decompose_sum(n: u64, d_min: u64, d_max: u64, s: u128) -> Result<(u64, u64)> {
    let (nn, lo, hi) = (n as u128, d_min as u128, d_max as u128);
    if n == 0 || lo > hi || s < nn * lo || s > nn * hi {
        return Err(Error::Precondition(format!("sum {s} outside [n d_min, n d_max] = [{}, {}]", nn * lo, nn * hi)));
    }
    if lo == hi {
        return Ok((0, d_min));
    }
    let base = s - (nn - 1) * lo;
    let k = if base <= hi { 0 } else { (base - hi).div_ceil(hi - lo) };
    let d_int = s - (nn - k - 1) * lo - k * hi;
    Ok((k as u64, d_int as u64))
}

/// Extremal spec in the box `[d_min, top]` with the sum of `d`, if the
/// construction applies to it.
fn spec_for(n: u64, d_min: u64, top: u64, s: u128) -> Option<ExtremalSpec> {
    let (mut k, mut d_int) = decompose_sum(n, d_min, top, s).ok()?;
    if k == 0 {
        if d_int != top {
            return None;
        }
        (k, d_int) = (1, d_min);
    }
    let spec = ExtremalSpec { n, k, d_min, d_int, d_max: top };
    spec.check().ok().map(|_| spec)
}

/// An extremal spec whose realization majorizes `d`.
///
/// The box `[min d, max d]` is tried first, then boxes with a raised ceiling
/// up to `C(n-1, 2)`.
pub fn find_certificate(d: &DegreeSequence) -> Option<ExtremalSpec> {
    let n = d.len() as u64;
    let (lo, hi) = (d.min()?, d.max()?);
    let s = d.sum();
    (hi..=max_degree(n)).find_map(|top| spec_for(n, lo, top, s))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Graphic,
    FailsMod3,
    BelowThreshold,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Graphic => "graphic",
            Self::FailsMod3 => "fails_mod3",
            Self::BelowThreshold => "below_threshold",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub certificate: Option<ExtremalSpec>,
    pub g_star: Option<Argmax<i64>>,
    /// `min d >= g*(n, max d)`.
    pub band_condition: bool,
}

/// One-sided decision: `Graphic` comes with a construction, while
/// `BelowThreshold` claims nothing about graphicality.
pub fn decide_graphic_interval(d: &DegreeSequence) -> Result<Decision> {
    if d.is_empty() {
        return Err(Error::InvalidInput("empty degree sequence".into()));
    }
    d.check_degree_bound()?;
    let n = d.len() as u64;
    let (lo, hi) = (d.min().unwrap_or(0), d.max().unwrap_or(0));
    let gs = g_star(n, hi);
    let band_condition = gs.is_some_and(|g| lo as i64 >= g.value);
    let (verdict, certificate) = if !d.sum().is_multiple_of(3) {
        (Verdict::FailsMod3, None)
    } else if hi == 0 {
        (Verdict::Graphic, None)
    } else {
        match find_certificate(d) {
            Some(c) => (Verdict::Graphic, Some(c)),
            None => (Verdict::BelowThreshold, None),
        }
    };
    Ok(Decision { verdict, certificate, g_star: gs, band_condition })
}

/// A realization with `degree(i) == d[i]` for every position `i`.
pub fn realize(d: &DegreeSequence) -> Result<Hypergraph3> {
    let dec = decide_graphic_interval(d)?;
    if dec.verdict != Verdict::Graphic {
        return Err(Error::Precondition(format!("sequence is not in the constructive regime ({})", dec.verdict)));
    }
    let n = d.len();
    let Some(spec) = dec.certificate else {
        return Ok(Hypergraph3::new(n));
    };
    let mut h = realize_extremal(&spec)?;
    morph_to_target(&mut h, d).map_err(|e| match e {
        Error::Precondition(m) => Error::Internal(m),
        other => other,
    })?;
    let got = h.degrees();
    let mut hv: Vec<usize> = (0..n).collect();
    hv.sort_by(|&a, &b| got[b].cmp(&got[a]).then(a.cmp(&b)));
    let mut dv: Vec<usize> = (0..n).collect();
    dv.sort_by(|&a, &b| d.degrees()[b].cmp(&d.degrees()[a]).then(a.cmp(&b)));
    let mut perm = vec![0 as Vertex; n];
    for (x, y) in hv.iter().zip(&dv) {
        perm[*x] = *y as Vertex;
    }
    let out = h.relabel(&perm)?;
    if out.degrees() != d.degrees() {
        return Err(Error::Internal("relabelled realization does not match the input".into()));
    }
    Ok(out)
}
