//! The critical class `D(n, k, d_max)`: `k` vertices of degree `d_max` and an
//! almost regular tail, together with `f0`, `f`, `f*`, `k*`, `g` and `g*`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::binom::{choose2, choose3, max_degree};
use crate::error::{Error, Result};
use crate::hingeflip::{equalize, EqualizeMode};
use crate::hypergraph::{Edge, Hypergraph3, Vertex};
use crate::partition::VertexPartition;
use crate::sequence::{ceil_div, DegreeSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CriticalCase {
    C0,
    C1,
    C2,
}

impl fmt::Display for CriticalCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::C0 => "C0",
            Self::C1 => "C1",
            Self::C2 => "C2",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamViolation {
    /// `k` outside `1..=n`.
    KOutOfRange,
    /// `d_max > C(n-1, 2)`.
    DegreeTooLarge,
    /// `k d_max ≡ 1 (mod 3)` needs `k <= n - 2`.
    RemainderOne,
    /// `k d_max ≡ 2 (mod 3)` needs `k <= n - 1`.
    RemainderTwo,
    /// Odd `k (d_max - C(k-1, 2))` in case C1 needs `k <= n - 2`.
    OddParity,
}

impl fmt::Display for ParamViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::KOutOfRange => "k must satisfy 1 <= k <= n",
            Self::DegreeTooLarge => "d_max exceeds C(n-1,2)",
            Self::RemainderOne => "k*d_max = 1 mod 3 requires k <= n-2",
            Self::RemainderTwo => "k*d_max = 2 mod 3 requires k <= n-1",
            Self::OddParity => "odd k*(d_max - C(k-1,2)) in case C1 requires k <= n-2",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CriticalParams {
    n: u64,
    k: u64,
    d_max: u64,
}

fn case_of(n: u64, k: u64, d: u64) -> CriticalCase {
    let base = choose2(k.saturating_sub(1));
    if d <= base {
        CriticalCase::C0
    } else if d - base <= (n - k) * (k - 1) {
        CriticalCase::C1
    } else {
        CriticalCase::C2
    }
}

pub fn validate_params(n: u64, k: u64, d_max: u64) -> std::result::Result<CriticalParams, Vec<ParamViolation>> {
    let mut bad = Vec::new();
    if k == 0 || k > n {
        bad.push(ParamViolation::KOutOfRange);
        return Err(bad);
    }
    if d_max > max_degree(n) {
        bad.push(ParamViolation::DegreeTooLarge);
    }
    let kd = k as u128 * d_max as u128;
    if kd % 3 == 1 && k + 2 > n {
        bad.push(ParamViolation::RemainderOne);
    }
    if kd % 3 == 2 && k + 1 > n {
        bad.push(ParamViolation::RemainderTwo);
    }
    if bad.is_empty() && case_of(n, k, d_max) == CriticalCase::C1 {
        let r = k as u128 * (d_max - choose2(k - 1)) as u128;
        if r % 2 == 1 && k + 2 > n {
            bad.push(ParamViolation::OddParity);
        }
    }
    if bad.is_empty() {
        Ok(CriticalParams { n, k, d_max })
    } else {
        Err(bad)
    }
}

/// Shorthand for [`validate_params`] with the violations folded into an error.
pub fn params(n: u64, k: u64, d_max: u64) -> Result<CriticalParams> {
    validate_params(n, k, d_max).map_err(|v| {
        let msgs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        Error::Precondition(format!("invalid critical parameters ({n}, {k}, {d_max}): {}", msgs.join("; ")))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallDegreeSummary {
    pub case: CriticalCase,
    pub small_sum: u128,
    pub f0: Option<BigRational>,
}

impl CriticalParams {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn d_max(&self) -> u64 {
        self.d_max
    }

    pub fn case(&self) -> CriticalCase {
        case_of(self.n, self.k, self.d_max)
    }

    /// `k (d_max - C(k-1, 2))`, the 2L1S/1L2S budget in case C1.
    fn excess(&self) -> u128 {
        self.k as u128 * (self.d_max - choose2(self.k - 1)) as u128
    }

    /// Sum of the small degrees.
    pub fn small_sum(&self) -> u128 {
        let (n, k, d) = (self.n as u128, self.k as u128, self.d_max as u128);
        match self.case() {
            CriticalCase::C0 => 2 * k * d % 3,
            CriticalCase::C1 => {
                let r = self.excess();
                r / 2 + 2 * (r % 2)
            }
            CriticalCase::C2 => {
                let k1 = self.k - 1;
                let over = d - choose2(k1) as u128 - (n - k) * k1 as u128;
                choose2(self.k) as u128 * (n - k) + 2 * k * over
            }
        }
    }

    pub fn summary(&self) -> SmallDegreeSummary {
        let s = self.small_sum();
        let f0 = (self.k < self.n)
            .then(|| BigRational::new(BigInt::from(s), BigInt::from(self.n - self.k)));
        SmallDegreeSummary { case: self.case(), small_sum: s, f0 }
    }

    /// `f = ceil(f0)`; needs `k < n`.
    pub fn f(&self) -> Result<u64> {
        if self.k >= self.n {
            return Err(Error::Precondition("f0 needs k < n".into()));
        }
        Ok(self.small_sum().div_ceil((self.n - self.k) as u128) as u64)
    }

    /// `g = f + ceil(2 (d_max - f) / (n - k - 1))`; needs `k <= n - 2`.
    pub fn g(&self) -> Result<i64> {
        if self.k + 2 > self.n {
            return Err(Error::Precondition("g needs k <= n-2".into()));
        }
        let f = self.f()? as i128;
        let den = (self.n - self.k - 1) as i128;
        Ok((f + ceil_div(2 * (self.d_max as i128 - f), den)) as i64)
    }
}

pub fn f0_exact(n: u64, k: u64, d_max: u64) -> Result<BigRational> {
    if k >= n {
        return Err(Error::Precondition("f0 needs k < n".into()));
    }
    Ok(params(n, k, d_max)?.summary().f0.expect("k < n"))
}

pub fn f_val(n: u64, k: u64, d_max: u64) -> Result<u64> {
    params(n, k, d_max)?.f()
}

pub fn g_val(n: u64, k: u64, d_max: u64) -> Result<i64> {
    if k + 2 > n {
        return Err(Error::Precondition(format!("g({n},{k},{d_max}) needs k <= n-2")));
    }
    params(n, k, d_max)?.g()
}

/// A maximum over `k` together with its smallest maximizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Argmax<T> {
    pub value: T,
    pub k: u64,
}

fn argmax<T: Ord + Copy>(ks: impl Iterator<Item = u64>, mut val: impl FnMut(u64) -> Option<T>) -> Option<Argmax<T>> {
    let mut best: Option<Argmax<T>> = None;
    for k in ks {
        if let Some(v) = val(k) {
            if best.is_none_or(|b| v > b.value) {
                best = Some(Argmax { value: v, k });
            }
        }
    }
    best
}

/// `f*` and `k*` over valid `k` in `1..=n-1`.
pub fn f_star(n: u64, d_max: u64) -> Option<Argmax<u64>> {
    argmax(1..n, |k| validate_params(n, k, d_max).ok()?.f().ok())
}

/// `g*` over valid `k` in `1..=n-2` with `d_max > C(k-1, 2)`.
///
/// Cases C0 are left out: there the small degrees are at most 1 and the
/// formula overshoots for `k` close to `n`. See [`g_star_all_k`].
pub fn g_star(n: u64, d_max: u64) -> Option<Argmax<i64>> {
    argmax(1..n.saturating_sub(1), |k| {
        let p = validate_params(n, k, d_max).ok()?;
        (p.case() != CriticalCase::C0).then(|| p.g().ok())?
    })
}

/// `g*` over every valid `k` in `1..=n-2`, C0 included.
pub fn g_star_all_k(n: u64, d_max: u64) -> Option<Argmax<i64>> {
    argmax(1..n.saturating_sub(1), |k| validate_params(n, k, d_max).ok()?.g().ok())
}

pub fn critical_sequence(p: &CriticalParams) -> DegreeSequence {
    let (n, k) = (p.n as usize, p.k as usize);
    let mut v = Vec::with_capacity(n);
    if n > k {
        let m = (n - k) as u128;
        let s = p.small_sum();
        let (lo, extra) = ((s / m) as u64, (s % m) as usize);
        v.extend(std::iter::repeat_n(lo, n - k - extra));
        v.extend(std::iter::repeat_n(lo + 1, extra));
    }
    v.extend(std::iter::repeat_n(p.d_max, k));
    DegreeSequence::new(v)
}

/// 3L edges `a < b < c < k` in lexicographic order.
fn edges_3l(k: Vertex) -> impl Iterator<Item = Edge> {
    (0..k).flat_map(move |a| (a + 1..k).flat_map(move |b| (b + 1..k).map(move |c| Edge::from_distinct(a, b, c))))
}

/// 2L1S edges `a < b < k <= c` in lexicographic order.
fn edges_2l1s(k: Vertex, n: Vertex) -> impl Iterator<Item = Edge> {
    (0..k).flat_map(move |a| (a + 1..k).flat_map(move |b| (k..n).map(move |c| Edge::from_distinct(a, b, c))))
}

/// 1L2S edges `a < k <= b < c` in lexicographic order.
fn edges_1l2s(k: Vertex, n: Vertex) -> impl Iterator<Item = Edge> {
    (0..k).flat_map(move |a| (k..n).flat_map(move |b| (b + 1..n).map(move |c| Edge::from_distinct(a, b, c))))
}

fn add_all(h: &mut Hypergraph3, edges: impl Iterator<Item = Edge>, count: u128) -> Result<()> {
    let mut added = 0u128;
    for e in edges.take(count.min(usize::MAX as u128) as usize) {
        h.add_edge(e)?;
        added += 1;
    }
    if added != count {
        return Err(Error::Internal(format!("ran out of edges: wanted {count}, found {added}")));
    }
    Ok(())
}

/// Realizes the critical sequence. The first `k` vertices are large.
///
/// With `skip_rounding_edge` the single 1L2S parity edge of case C1 is left
/// out, so one large vertex ends at `d_max - 1` and the small sum drops by 2.
/// The flag has no effect when there is no such edge.
pub fn critical_hypergraph(p: &CriticalParams, skip_rounding_edge: bool) -> Result<(Hypergraph3, VertexPartition)> {
    let (n, k, d) = (p.n as Vertex, p.k as Vertex, p.d_max);
    let mut h = Hypergraph3::new(n as usize);
    let mut large_regular = true;
    match p.case() {
        CriticalCase::C0 => {
            let kd = k as u128 * d as u128;
            add_all(&mut h, edges_3l(k), kd / 3)?;
            match kd % 3 {
                1 => h.add_edge(Edge::from_distinct(0, k, k + 1))?,
                2 => h.add_edge(Edge::from_distinct(0, 1, k))?,
                _ => {}
            }
        }
        CriticalCase::C1 => {
            let r = p.excess();
            add_all(&mut h, edges_3l(k), choose3(k as u64) as u128)?;
            add_all(&mut h, edges_2l1s(k, n), r / 2)?;
            if r % 2 == 1 {
                if skip_rounding_edge {
                    large_regular = false;
                } else {
                    h.add_edge(Edge::from_distinct(0, k, k + 1))?;
                }
            }
        }
        CriticalCase::C2 => {
            let k1 = p.k - 1;
            let over = (d - choose2(k1)) as u128 - (p.n - p.k) as u128 * k1 as u128;
            add_all(&mut h, edges_3l(k), choose3(k as u64) as u128)?;
            add_all(&mut h, edges_2l1s(k, n), choose2(p.k) as u128 * (p.n - p.k) as u128)?;
            add_all(&mut h, edges_1l2s(k, n), p.k as u128 * over)?;
        }
    }
    let large: Vec<Vertex> = (0..k).collect();
    let small: Vec<Vertex> = (k..n).collect();
    let mode = if large_regular { EqualizeMode::Regular(d) } else { EqualizeMode::AlmostRegular };
    equalize(&mut h, &large, mode).map_err(internal)?;
    equalize(&mut h, &small, EqualizeMode::AlmostRegular).map_err(internal)?;
    Ok((h, VertexPartition::two_part(n as usize, k as usize)))
}

fn internal(e: Error) -> Error {
    match e {
        Error::Internal(_) => e,
        other => Error::Internal(format!("equalization failed: {other}")),
    }
}
