//! Hinge flips and the balancing loops built from them.
//!
//! A hinge flip removes `{donor} ∪ x` and adds `{recipient} ∪ x` for a pair
//! `x`, moving one unit of degree from donor to recipient.

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph3, Vertex};
use crate::sequence::{majorizes, DegreeSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlipDescriptor {
    pub removed: Edge,
    pub added: Edge,
    pub donor: Vertex,
    pub recipient: Vertex,
    pub pair: [Vertex; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlipKind {
    Balancing,
    Neutral,
    Reverse,
}

impl FlipDescriptor {
    pub fn new(donor: Vertex, recipient: Vertex, pair: [Vertex; 2]) -> Result<Self> {
        let [a, b] = pair;
        if donor == recipient || pair.contains(&recipient) || pair.contains(&donor) || a == b {
            return Err(Error::InvalidInput(format!(
                "bad flip: donor {donor}, recipient {recipient}, pair {a} {b}"
            )));
        }
        Ok(Self {
            removed: Edge::from_distinct(donor, a, b),
            added: Edge::from_distinct(recipient, a, b),
            donor,
            recipient,
            pair,
        })
    }

    /// Classification by the degrees in `h` before the flip.
    pub fn kind(&self, h: &Hypergraph3) -> FlipKind {
        let (di, dj) = (h.degree(self.donor), h.degree(self.recipient));
        if di > dj + 1 {
            FlipKind::Balancing
        } else if di == dj + 1 {
            FlipKind::Neutral
        } else {
            FlipKind::Reverse
        }
    }
}

pub fn apply_flip(h: &mut Hypergraph3, f: &FlipDescriptor) -> Result<()> {
    if !h.contains(&f.removed) {
        return Err(Error::MissingEdge(f.removed));
    }
    if h.contains(&f.added) {
        return Err(Error::EdgeExists(f.added));
    }
    h.remove_edge(&f.removed)?;
    h.add_edge(f.added)
}

/// First valid flip from `donor` to `recipient`, scanning the donor's edges
/// in lexicographic order.
pub fn find_balancing_flip(h: &Hypergraph3, donor: Vertex, recipient: Vertex) -> Result<FlipDescriptor> {
    for v in [donor, recipient] {
        if v as usize >= h.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: h.n() });
        }
    }
    let (di, dj) = (h.degree(donor), h.degree(recipient));
    if di <= dj + 1 {
        return Err(Error::Precondition(format!(
            "not balancing: d({donor}) = {di}, d({recipient}) = {dj}"
        )));
    }
    for e in h.incident(donor) {
        if e.contains(recipient) {
            continue;
        }
        let [a, b] = e.others(donor).expect("incident edge contains donor");
        let added = Edge::from_distinct(recipient, a, b);
        if !h.contains(&added) {
            return Ok(FlipDescriptor { removed: *e, added, donor, recipient, pair: [a, b] });
        }
    }
    Err(Error::Internal(format!(
        "no balancing flip from {donor} (degree {di}) to {recipient} (degree {dj})"
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqualizeMode {
    Regular(u64),
    AlmostRegular,
}

fn extremes(h: &Hypergraph3, subset: &[Vertex]) -> Option<(Vertex, Vertex)> {
    let mut hi: Option<(u64, Vertex)> = None;
    let mut lo: Option<(u64, Vertex)> = None;
    for &v in subset {
        let d = h.degree(v);
        if hi.is_none_or(|(hd, hv)| d > hd || (d == hd && v < hv)) {
            hi = Some((d, v));
        }
        if lo.is_none_or(|(ld, lv)| d < ld || (d == ld && v < lv)) {
            lo = Some((d, v));
        }
    }
    Some((hi?.1, lo?.1))
}

/// Balances degrees inside `subset` with flips whose donor and recipient
/// both lie in `subset`. Returns the number of flips.
pub fn equalize(h: &mut Hypergraph3, subset: &[Vertex], mode: EqualizeMode) -> Result<usize> {
    for &v in subset {
        if v as usize >= h.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: h.n() });
        }
    }
    if let EqualizeMode::Regular(target) = mode {
        let sum: u128 = subset.iter().map(|&v| h.degree(v) as u128).sum();
        if sum != subset.len() as u128 * target as u128 {
            return Err(Error::Precondition(format!(
                "subset degree sum {sum} is not {} x {target}",
                subset.len()
            )));
        }
    }
    let mut flips = 0;
    while let Some((hi, lo)) = extremes(h, subset) {
        if h.degree(hi) <= h.degree(lo) + 1 {
            break;
        }
        let f = find_balancing_flip(h, hi, lo)?;
        apply_flip(h, &f)?;
        flips += 1;
    }
    Ok(flips)
}

fn order_desc(deg: &[u64]) -> Vec<Vertex> {
    let mut idx: Vec<Vertex> = (0..deg.len() as Vertex).collect();
    idx.sort_by(|&a, &b| deg[b as usize].cmp(&deg[a as usize]).then(a.cmp(&b)));
    idx
}

/// Sum of `|current - target|` under sorted alignment.
pub fn sorted_distance(current: &[u64], target: &[u64]) -> u128 {
    let mut a = current.to_vec();
    let mut b = target.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    a.iter().zip(&b).map(|(x, y)| x.abs_diff(*y) as u128).sum()
}

/// Moves the degree multiset of `h` onto `target` by balancing flips.
/// Returns the number of flips.
///
/// Degrees are aligned in sorted order. Each step moves one unit from the
/// last surplus position before the first deficit to that deficit, which
/// keeps the current degrees majorizing the target and shrinks the sorted
/// distance by exactly 2.
pub fn morph_to_target(h: &mut Hypergraph3, target: &DegreeSequence) -> Result<usize> {
    let n = h.n();
    if target.len() != n {
        return Err(Error::Precondition(format!("target has {} entries for {n} vertices", target.len())));
    }
    let deg = h.degrees();
    if deg.iter().map(|&d| d as u128).sum::<u128>() != target.sum() {
        return Err(Error::Precondition("degree sums differ".into()));
    }
    if n == 0 {
        return Ok(0);
    }
    let (lo, hi) = (*deg.iter().min().unwrap(), *deg.iter().max().unwrap());
    if target.degrees().iter().any(|&t| t < lo || t > hi) {
        return Err(Error::Precondition(format!("target leaves the box [{lo}, {hi}]")));
    }
    if !majorizes(&deg, target.degrees()) {
        return Err(Error::Precondition("current degrees do not majorize the target".into()));
    }
    let tgt = target.sorted_desc();
    let budget = sorted_distance(&deg, &tgt) / 2;
    let mut flips = 0usize;
    loop {
        let deg = h.degrees();
        let order = order_desc(&deg);
        let cur: Vec<u64> = order.iter().map(|&v| deg[v as usize]).collect();
        let Some(j) = (0..n).find(|&j| cur[j] < tgt[j]) else {
            return Ok(flips);
        };
        let surplus = (0..j).rev().find(|&i| cur[i] > tgt[i]);
        let Some(i) = surplus.filter(|_| majorizes(&cur, &tgt)) else {
            return Err(Error::Internal(format!(
                "majorization lost after {flips} flips: current {cur:?}, target {tgt:?}"
            )));
        };
        if flips as u128 >= budget {
            return Err(Error::Internal(format!("flip budget {budget} exhausted")));
        }
        let f = find_balancing_flip(h, order[i], order[j])?;
        apply_flip(h, &f)?;
        flips += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn e(a: u32, b: u32, c: u32) -> Edge {
        Edge::new(a, b, c).unwrap()
    }

    fn graph(n: usize, edges: &[(u32, u32, u32)]) -> Hypergraph3 {
        Hypergraph3::from_edges(n, edges.iter().map(|&(a, b, c)| e(a, b, c))).unwrap()
    }

    fn random_graph(n: usize, m: usize, seed: u64) -> Hypergraph3 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut h = Hypergraph3::new(n);
        let cap = crate::binom::choose3(n as u64) as usize;
        while h.edge_count() < m.min(cap) {
            let (a, b, c) = (rng.gen_range(0..n as u32), rng.gen_range(0..n as u32), rng.gen_range(0..n as u32));
            if let Ok(x) = Edge::new(a, b, c) {
                let _ = h.add_edge(x);
            }
        }
        h
    }

    #[test]
    fn apply_single() {
        let mut h = graph(4, &[(0, 1, 2)]);
        let f = FlipDescriptor::new(0, 3, [1, 2]).unwrap();
        assert_eq!(f.kind(&h), FlipKind::Neutral);
        apply_flip(&mut h, &f).unwrap();
        assert_eq!(h.edges().copied().collect::<Vec<_>>(), vec![e(1, 2, 3)]);
        assert_eq!(h.degrees(), vec![0, 1, 1, 1]);
        assert_eq!(apply_flip(&mut h, &f), Err(Error::MissingEdge(e(0, 1, 2))));
    }

    #[test]
    fn apply_rejects_present_target() {
        let mut h = graph(4, &[(0, 1, 2), (1, 2, 3)]);
        let f = FlipDescriptor::new(0, 3, [1, 2]).unwrap();
        assert_eq!(apply_flip(&mut h, &f), Err(Error::EdgeExists(e(1, 2, 3))));
        assert_eq!(h.edge_count(), 2);
    }

    #[test]
    fn bookkeeping_matches_recount() {
        let mut h = graph(5, &[(0, 1, 2), (0, 1, 3), (0, 2, 3), (0, 3, 4)]);
        let f = find_balancing_flip(&h, 0, 4).unwrap();
        apply_flip(&mut h, &f).unwrap();
        h.check_invariants().unwrap();
        assert_eq!(h.degrees(), vec![3, 2, 2, 3, 2]);
    }

    #[test]
    fn finder_example() {
        let h = graph(5, &[(0, 1, 2), (0, 1, 3), (0, 2, 3)]);
        let f = find_balancing_flip(&h, 0, 4).unwrap();
        assert_eq!((f.removed, f.added), (e(0, 1, 2), e(1, 2, 4)));
        assert_eq!(f.kind(&h), FlipKind::Balancing);
        let h = graph(4, &[(0, 1, 2)]);
        assert!(matches!(find_balancing_flip(&h, 0, 3), Err(Error::Precondition(_))));
    }

    #[test]
    fn descriptor_rejects_bad_shapes() {
        assert!(FlipDescriptor::new(0, 0, [1, 2]).is_err());
        assert!(FlipDescriptor::new(0, 1, [1, 2]).is_err());
        assert!(FlipDescriptor::new(0, 3, [1, 1]).is_err());
    }

    #[test]
    fn equalize_regular_example() {
        // subset {0,1,2,3} with degrees (5,3,4,4), helper vertices 4..8
        let mut h = Hypergraph3::new(9);
        let want = [5u64, 3, 4, 4];
        let mut helpers = vec![];
        for a in 4..9u32 {
            for b in a + 1..9 {
                helpers.push((a, b));
            }
        }
        for (v, &d) in want.iter().enumerate() {
            for &(a, b) in helpers.iter().take(d as usize) {
                h.add_edge(e(v as u32, a, b)).unwrap();
            }
        }
        let flips = equalize(&mut h, &[0, 1, 2, 3], EqualizeMode::Regular(4)).unwrap();
        assert_eq!(flips, 1);
        assert_eq!(&h.degrees()[..4], &[4, 4, 4, 4]);
        assert!(equalize(&mut h, &[0, 1, 2, 3], EqualizeMode::Regular(5)).is_err());
    }

    #[test]
    fn equalize_almost_regular_example() {
        let mut h = Hypergraph3::new(9);
        for &(a, b) in &[(4, 5), (4, 6), (4, 7), (4, 8), (5, 6), (5, 7), (5, 8)] {
            h.add_edge(e(0, a, b)).unwrap();
        }
        equalize(&mut h, &[0, 1, 2, 3], EqualizeMode::AlmostRegular).unwrap();
        let mut d = h.degrees()[..4].to_vec();
        d.sort_unstable();
        assert_eq!(d, vec![1, 2, 2, 2]);
        assert_eq!(equalize(&mut h, &[0, 1, 2, 3], EqualizeMode::AlmostRegular).unwrap(), 0);
    }

    #[test]
    fn morph_example() {
        // (3,3,1,1) on a 6-vertex host; vertices 4 and 5 hold the rest
        let mut h = graph(6, &[(0, 1, 4), (0, 1, 5), (0, 4, 5), (1, 2, 3)]);
        let mut target = h.degrees();
        target[..4].copy_from_slice(&[2, 2, 2, 2]);
        let before = h.degrees();
        assert_eq!(&before[..4], &[3, 3, 1, 1]);
        let flips = morph_to_target(&mut h, &DegreeSequence::new(target.clone())).unwrap();
        assert_eq!(flips, 2);
        let mut got = h.degrees();
        got.sort_unstable();
        target.sort_unstable();
        assert_eq!(got, target);
    }

    #[test]
    fn morph_identity_and_rejections() {
        let mut h = graph(4, &[(0, 1, 2)]);
        assert_eq!(morph_to_target(&mut h, &DegreeSequence::new(vec![1, 1, 1, 0])).unwrap(), 0);
        assert!(morph_to_target(&mut h, &DegreeSequence::new(vec![1, 1, 1, 1])).is_err());
        assert!(morph_to_target(&mut h, &DegreeSequence::new(vec![3, 0, 0, 0])).is_err());
    }

    proptest! {
        #[test]
        fn found_flip_applies(n in 5usize..11, m in 1usize..40, seed in any::<u64>()) {
            let mut h = random_graph(n, m, seed);
            let deg = h.degrees();
            let hi = (0..n).max_by_key(|&v| (deg[v], std::cmp::Reverse(v))).unwrap() as u32;
            let lo = (0..n).min_by_key(|&v| (deg[v], v)).unwrap() as u32;
            prop_assume!(deg[hi as usize] > deg[lo as usize] + 1);
            let f = find_balancing_flip(&h, hi, lo).unwrap();
            prop_assert_eq!(f.kind(&h), FlipKind::Balancing);
            let edges = h.edge_count();
            apply_flip(&mut h, &f).unwrap();
            h.check_invariants().unwrap();
            prop_assert_eq!(h.edge_count(), edges);
            let after = h.degrees();
            for v in 0..n as u32 {
                let want = deg[v as usize] as i64 - (v == hi) as i64 + (v == lo) as i64;
                prop_assert_eq!(after[v as usize] as i64, want);
            }
        }

        #[test]
        fn equalize_touches_only_subset(n in 6usize..11, m in 1usize..60, seed in any::<u64>(), mask in any::<u16>()) {
            let mut h = random_graph(n, m, seed);
            let subset: Vec<u32> = (0..n as u32).filter(|v| mask >> v & 1 == 1).collect();
            let before = h.degrees();
            equalize(&mut h, &subset, EqualizeMode::AlmostRegular).unwrap();
            let after = h.degrees();
            for v in 0..n as u32 {
                if !subset.contains(&v) {
                    prop_assert_eq!(before[v as usize], after[v as usize]);
                }
            }
            if let (Some(a), Some(b)) = (subset.iter().map(|&v| after[v as usize]).max(), subset.iter().map(|&v| after[v as usize]).min()) {
                prop_assert!(a - b <= 1);
            }
            prop_assert_eq!(before.iter().sum::<u64>(), after.iter().sum::<u64>());
        }

        #[test]
        fn morph_reaches_any_majorized_target(n in 5usize..10, m in 1usize..50, seed in any::<u64>(), steps in 0usize..30) {
            let mut h = random_graph(n, m, seed);
            let start = h.degrees();
            // Robin Hood transfers keep the target majorized and inside the box.
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
            let mut t = start.clone();
            for _ in 0..steps {
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(0..n);
                if t[i] >= t[j] + 2 {
                    t[i] -= 1;
                    t[j] += 1;
                }
            }
            let target = DegreeSequence::new(t.clone());
            let flips = morph_to_target(&mut h, &target).unwrap();
            prop_assert_eq!(flips as u128, sorted_distance(&start, &t) / 2);
            let mut got = h.degrees();
            got.sort_unstable();
            t.sort_unstable();
            prop_assert_eq!(got, t);
            h.check_invariants().unwrap();
        }
    }
}
