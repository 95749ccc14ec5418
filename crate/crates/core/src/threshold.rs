//! The density function `C(α, d)`, the threshold `c1*(c2)` and related scans.
//!
//! For `d = c2/2` the middle branch is stationary where
//! `p_M(α) = 2α³ − 3α² + c2` vanishes and the upper branch where
//! `(1 − α)³ = 1 − c2`.
//! Both polynomials are strictly decreasing on `(0, 1)`, so each has a
//! single root there, found by bisection on exact rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::binom::max_degree;
use crate::critical::g_star;
use crate::error::{Error, Result};
use crate::exact::{from_f64, from_u64, in_unit_interval, to_f64};

/// `C(α, d)` for `α` in `(0, 1)` and `d` in `(0, 1/2)`.
pub fn c_value(alpha: f64, d: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) || !(d > 0.0 && d < 0.5) {
        return Err(Error::InvalidInput(format!("C(α, d) needs 0 < α < 1 and 0 < d < 1/2, got α = {alpha}, d = {d}")));
    }
    Ok(if d <= alpha * alpha / 2.0 {
        0.0
    } else if d <= alpha * (1.0 - alpha / 2.0) {
        middle_value(alpha, d)
    } else {
        upper_value(alpha, d)
    })
}

/// Middle branch formula `α/(1−α) · (2d − α²)/2`, without the domain split.
pub fn middle_value(alpha: f64, d: f64) -> f64 {
    alpha / (1.0 - alpha) * (2.0 * d - alpha * alpha) / 2.0
}

/// Upper branch formula `2α/(1−α) · (2d − α²) − 3α²`, without the domain split.
pub fn upper_value(alpha: f64, d: f64) -> f64 {
    2.0 * alpha / (1.0 - alpha) * (2.0 * d - alpha * alpha) - 3.0 * alpha * alpha
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Middle,
    Upper,
    Breakpoint,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Middle => "middle",
            Self::Upper => "upper",
            Self::Breakpoint => "breakpoint",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub alpha: f64,
    pub value: f64,
    pub branch: Branch,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdResult {
    pub c2: BigRational,
    pub c1_star: f64,
    pub alpha_star: f64,
    pub branch: Branch,
    /// `|dC/dα|` at the reported point; zero at the breakpoint by convention.
    pub residual: f64,
    pub error_bound: f64,
    /// Every candidate whose value is within the tie tolerance of the maximum.
    pub near_maximizers: Vec<Candidate>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdOptions {
    /// Bracket width on `α`.
    pub tol: f64,
    /// Candidates closer than this in value count as tied; ties go to the
    /// largest `α`.
    pub tie_tol: f64,
    pub max_iter: u32,
}

impl Default for ThresholdOptions {
    fn default() -> Self {
        Self { tol: 1e-10, tie_tol: 1e-6, max_iter: 200 }
    }
}

fn half() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(2))
}

/// Bisects a decreasing function with a sign change on `(0, 1)`.
fn bisect_decreasing(
    f: impl Fn(&BigRational) -> BigRational,
    tol: &BigRational,
    max_iter: u32,
) -> Result<(BigRational, BigRational)> {
    let (mut lo, mut hi) = (BigRational::zero(), BigRational::one());
    for _ in 0..max_iter {
        if &hi - &lo <= *tol {
            return Ok((lo, hi));
        }
        let mid = (&lo + &hi) * half();
        let v = f(&mid);
        if v.is_zero() {
            return Ok((mid.clone(), mid));
        }
        if v.is_positive() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Convergence(format!("bracket wider than {} after {max_iter} bisections", to_f64(tol))))
}

fn p_middle(a: &BigRational, c2: &BigRational) -> BigRational {
    let a2 = a * a;
    BigRational::from_integer(2.into()) * &a2 * a - BigRational::from_integer(3.into()) * a2 + c2
}

/// Sign-equivalent to the upper-branch stationarity polynomial.
fn p_upper(a: &BigRational, c2: &BigRational) -> BigRational {
    let b = BigRational::one() - a;
    &b * &b * &b - (BigRational::one() - c2)
}

fn middle_derivative(alpha: f64, c2: f64) -> f64 {
    (2.0 * alpha.powi(3) - 3.0 * alpha * alpha + c2) / (2.0 * (1.0 - alpha).powi(2))
}

fn upper_derivative(alpha: f64, c2: f64) -> f64 {
    -2.0 * ((alpha - 1.0).powi(3) + 1.0 - c2) / (1.0 - alpha).powi(2)
}

fn check_c2(c2: &BigRational) -> Result<()> {
    if !in_unit_interval(c2) || c2.is_one() {
        return Err(Error::InvalidInput(format!("c2 must lie in (0, 1), got {c2}")));
    }
    Ok(())
}

pub fn c1_star(c2: &BigRational, tol: f64) -> Result<ThresholdResult> {
    c1_star_with(c2, &ThresholdOptions { tol, ..Default::default() })
}

pub fn c1_star_with(c2: &BigRational, opts: &ThresholdOptions) -> Result<ThresholdResult> {
    check_c2(c2)?;
    if !(opts.tol > 0.0) || !(opts.tie_tol >= 0.0) {
        return Err(Error::InvalidInput("tolerances must be positive".into()));
    }
    let tol = from_f64(opts.tol)?;
    let c2f = to_f64(c2);
    let d = c2f / 2.0;
    let one_minus = BigRational::one() - c2;
    let mut cands: Vec<(Candidate, f64)> = Vec::new();

    let (lo, hi) = bisect_decreasing(|a| p_upper(a, c2), &tol, opts.max_iter)?;
    let mid = (&lo + &hi) * half();
    // α < 1 − √(1 − c2)  ⇔  (1 − α)² > 1 − c2
    let below_break = {
        let b = BigRational::one() - &mid;
        &b * &b > one_minus
    };
    if below_break {
        let (l, h, a) = (to_f64(&lo), to_f64(&hi), to_f64(&mid));
        let err = upper_derivative(l, c2f).abs().max(upper_derivative(h, c2f).abs()) * (h - l) / 2.0;
        cands.push((Candidate { alpha: a, value: upper_value(a, d), branch: Branch::Upper }, err));
    }

    let (lo, hi) = bisect_decreasing(|a| p_middle(a, c2), &tol, opts.max_iter)?;
    let mid = (&lo + &hi) * half();
    // 1 − √(1 − c2) ≤ α < √c2  ⇔  (1 − α)² ≤ 1 − c2 and α² < c2
    let valid = {
        let b = BigRational::one() - &mid;
        &b * &b <= one_minus && &mid * &mid < *c2
    };
    if valid {
        let (l, h, a) = (to_f64(&lo), to_f64(&hi), to_f64(&mid));
        let err = middle_derivative(l, c2f).abs().max(middle_derivative(h, c2f).abs()) * (h - l) / 2.0;
        cands.push((Candidate { alpha: a, value: middle_value(a, d), branch: Branch::Middle }, err));
    }

    let s = (1.0 - c2f).sqrt();
    let ab = 1.0 - s;
    cands.push((Candidate { alpha: ab, value: ab * ab, branch: Branch::Breakpoint }, 4.0 * f64::EPSILON));

    let best = cands.iter().map(|(c, _)| c.value).fold(f64::NEG_INFINITY, f64::max);
    let near: Vec<(Candidate, f64)> = cands.into_iter().filter(|(c, _)| best - c.value <= opts.tie_tol).collect();
    let (pick, err) = *near
        .iter()
        .max_by(|a, b| a.0.alpha.total_cmp(&b.0.alpha))
        .expect("the breakpoint is always a candidate");
    let residual = match pick.branch {
        Branch::Middle => middle_derivative(pick.alpha, c2f).abs(),
        Branch::Upper => upper_derivative(pick.alpha, c2f).abs(),
        Branch::Breakpoint => 0.0,
    };
    Ok(ThresholdResult {
        c2: c2.clone(),
        c1_star: best,
        alpha_star: pick.alpha,
        branch: pick.branch,
        residual,
        error_bound: err + 8.0 * f64::EPSILON,
        near_maximizers: near.into_iter().map(|(c, _)| c).collect(),
    })
}

/// `c1*(c2)` on the grid `c2_min, c2_min + step, ...` up to `c2_max`.
pub fn sweep(c2_min: &BigRational, c2_max: &BigRational, step: &BigRational, tol: f64) -> Result<Vec<ThresholdResult>> {
    if !step.is_positive() {
        return Err(Error::InvalidInput("step must be positive".into()));
    }
    let mut out = Vec::new();
    let mut c2 = c2_min.clone();
    while c2 <= *c2_max {
        out.push(c1_star(&c2, tol)?);
        c2 = &c2 + step;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WidestInterval {
    pub c2: f64,
    pub c1_star: f64,
    pub alpha: f64,
    /// `|α/(1−α)·(c2−α²)/2 − (1 − c2)|` at the solution.
    pub value_residual: f64,
    /// `|(c2−3α²)(1−α) + α(c2−α²)|` at the solution.
    pub stationarity_residual: f64,
}

fn middle_root_f64(c2: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if 2.0 * mid.powi(3) - 3.0 * mid * mid + c2 > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The `c2` at which `c1*(c2) = 1 − c2`, by nested bisection.
pub fn widest_interval(tol: f64) -> Result<WidestInterval> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("tol must be positive".into()));
    }
    let gap = |c2: f64| {
        let a = middle_root_f64(c2);
        (a, middle_value(a, c2 / 2.0) - (1.0 - c2))
    };
    let (mut lo, mut hi) = (0.5f64, 0.99f64);
    if gap(lo).1 >= 0.0 || gap(hi).1 <= 0.0 {
        return Err(Error::Convergence("no sign change on [0.5, 0.99]".into()));
    }
    let mut iters = 0;
    while hi - lo > tol {
        iters += 1;
        if iters > 200 {
            return Err(Error::Convergence("outer bisection did not reach tol".into()));
        }
        let mid = 0.5 * (lo + hi);
        if gap(mid).1 > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let c2 = 0.5 * (lo + hi);
    let (alpha, value_residual) = gap(c2);
    let stationarity = (c2 - 3.0 * alpha * alpha) * (1.0 - alpha) + alpha * (c2 - alpha * alpha);
    Ok(WidestInterval {
        c2,
        c1_star: middle_value(alpha, c2 / 2.0),
        alpha,
        value_residual: value_residual.abs(),
        stationarity_residual: stationarity.abs(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct N0Scan {
    /// First `n` at which the inequality holds.
    pub first: Option<u64>,
    /// Whether it keeps holding from `first` up to `n_max`.
    pub holds_onward: bool,
    /// Smallest `n` from which it holds up to `n_max`.
    pub stable_from: Option<u64>,
}

/// Scans `n = 3..=n_max` for `g*(n, ⌊c2 C(n−1,2)⌋) ≤ c1 C(n−1,2)`.
pub fn empirical_n0(c1: &BigRational, c2: &BigRational, n_max: u64) -> Result<N0Scan> {
    check_c2(c2)?;
    if c1 > c2 {
        return Err(Error::Precondition("need c1 <= c2".into()));
    }
    let t = c1_star(c2, 1e-12)?;
    if to_f64(c1) <= t.c1_star + t.error_bound {
        return Err(Error::Precondition(format!("c1 = {} is not above c1*(c2) = {}", to_f64(c1), t.c1_star)));
    }
    let mut first = None;
    let mut stable_from = None;
    for n in 3..=n_max {
        let b = from_u64(max_degree(n));
        let d_max = (c2 * &b).floor().to_integer();
        let d_max: u64 = d_max.try_into().map_err(|_| Error::Internal("d_max overflow".into()))?;
        let ok = match g_star(n, d_max) {
            Some(g) => BigRational::from_integer(BigInt::from(g.value)) <= c1 * &b,
            None => false,
        };
        if ok {
            first.get_or_insert(n);
            stable_from.get_or_insert(n);
        } else {
            stable_from = None;
        }
    }
    Ok(N0Scan { first, holds_onward: first.is_some() && first == stable_from, stable_from })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_decimal;
    use proptest::prelude::*;

    fn grid_max(c2: f64) -> (f64, f64) {
        let mut best = (0.0, 0.0);
        let mut i = 1u32;
        while i < 1_000_000 {
            let a = i as f64 * 1e-6;
            let v = c_value(a, c2 / 2.0).unwrap();
            if v > best.0 {
                best = (v, a);
            }
            i += 1;
        }
        best
    }

    #[test]
    fn branch_examples() {
        assert_eq!(c_value(0.5, 0.1).unwrap(), 0.0);
        let a: f64 = 0.3;
        let d = a * (1.0 - a / 2.0);
        assert!((middle_value(a, d) - a * a).abs() < 1e-15);
        assert!((upper_value(a, d) - a * a).abs() < 1e-15);
        let c2: f64 = 0.64;
        let ab = 1.0 - (1.0 - c2).sqrt();
        assert!((c_value(ab, c2 / 2.0).unwrap() - (1.0 - (1.0 - c2).sqrt()).powi(2)).abs() < 1e-15);
        assert!(c_value(0.0, 0.1).is_err());
        assert!(c_value(0.5, 0.5).is_err());
    }

    #[test]
    fn reported_point() {
        let r = c1_star(&parse_decimal("0.721934").unwrap(), 1e-10).unwrap();
        assert!((r.c1_star - 0.278066).abs() < 1e-4);
        assert!((r.alpha_star - 0.652704).abs() < 1e-4);
        assert_eq!(r.branch, Branch::Middle);
        assert_eq!(r.near_maximizers.len(), 2);
        assert!(r.error_bound <= 1e-10);
    }

    #[test]
    fn matches_grid_oracle() {
        for i in 1..=9 {
            let c2 = i as f64 / 10.0;
            let r = c1_star(&BigRational::new(i.into(), 10.into()), 1e-10).unwrap();
            let (v, _) = grid_max(c2);
            assert!((r.c1_star - v).abs() < 1e-5, "c2 = {c2}: {} vs {v}", r.c1_star);
            assert!(r.c1_star > 0.0 && r.c1_star < c2);
        }
    }

    #[test]
    fn frozen_values() {
        for (c2, want) in [("0.1", 0.0075065), ("0.3", 0.047934), ("0.5", 0.125), ("0.7", 0.258162), ("0.8", 0.374014), ("0.9", 0.553670)] {
            let r = c1_star(&parse_decimal(c2).unwrap(), 1e-10).unwrap();
            assert!((r.c1_star - want).abs() < 2e-6, "{c2}: {}", r.c1_star);
        }
        let r = c1_star(&parse_decimal("0.9").unwrap(), 1e-10).unwrap();
        assert_eq!(r.branch, Branch::Upper);
    }

    #[test]
    fn widest() {
        let w = widest_interval(1e-12).unwrap();
        assert!((w.c2 - 0.721934).abs() < 1e-6);
        assert!((w.c1_star - 0.278066).abs() < 1e-6);
        assert!((w.alpha - 0.652704).abs() < 1e-6);
        assert!(w.value_residual < 1e-8 && w.stationarity_residual < 1e-8);
        let r = c1_star(&from_f64(w.c2).unwrap(), 1e-12).unwrap();
        assert!((r.c1_star - (1.0 - w.c2)).abs() < 1e-9);
    }

    #[test]
    fn n0_scan() {
        let c1 = parse_decimal("0.5").unwrap();
        let c2 = parse_decimal("0.721934").unwrap();
        let s = empirical_n0(&c1, &c2, 500).unwrap();
        assert_eq!(s.stable_from, Some(N0_PIN));
        let tighter = empirical_n0(&parse_decimal("0.3").unwrap(), &c2, 500).unwrap();
        assert!(tighter.stable_from.unwrap() > N0_PIN);
        assert!(empirical_n0(&parse_decimal("0.27").unwrap(), &c2, 50).is_err());
        assert!(empirical_n0(&parse_decimal("0.8").unwrap(), &c2, 50).is_err());
    }

    const N0_PIN: u64 = 26;

    #[test]
    fn sweep_grid() {
        let r = sweep(&parse_decimal("0.05").unwrap(), &parse_decimal("0.95").unwrap(), &parse_decimal("0.01").unwrap(), 1e-10).unwrap();
        assert_eq!(r.len(), 91);
        assert!(r.windows(2).all(|w| w[0].c2 < w[1].c2 && w[0].c1_star < w[1].c1_star));
    }

    proptest! {
        #[test]
        fn tolerance_scaling_is_stable(i in 1u32..1000) {
            let c2 = BigRational::new(i.into(), 1000.into());
            let a = c1_star(&c2, 1e-8).unwrap();
            let b = c1_star(&c2, 1e-12).unwrap();
            prop_assert!((a.c1_star - b.c1_star).abs() < 1e-8);
            prop_assert_eq!(a.branch, b.branch);
            prop_assert!(a.c1_star > 0.0 && a.c1_star < to_f64(&c2));
            prop_assert!(a.alpha_star > 0.0 && a.alpha_star < 1.0);
        }

        #[test]
        fn continuity_at_boundaries(a in 0.001f64..0.999) {
            // upper/middle boundary d = α(1 − α/2), middle/zero boundary d = α²/2
            let d1 = a * (1.0 - a / 2.0);
            prop_assert!((middle_value(a, d1) - upper_value(a, d1)).abs() <= 1e-12);
            let d0 = a * a / 2.0;
            prop_assert!(middle_value(a, d0).abs() <= 1e-12);
        }
    }
}
