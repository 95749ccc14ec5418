//! Degree sequences and class membership.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::binom::max_degree;
use crate::error::{Error, Result};
use crate::exact::{from_u64, to_f64};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DegreeSequence(Vec<u64>);

impl DegreeSequence {
    pub fn new(degrees: Vec<u64>) -> Self {
        Self(degrees)
    }

    pub fn degrees(&self) -> &[u64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u128 {
        self.0.iter().map(|&d| d as u128).sum()
    }

    pub fn min(&self) -> Option<u64> {
        self.0.iter().copied().min()
    }

    pub fn max(&self) -> Option<u64> {
        self.0.iter().copied().max()
    }

    pub fn sorted_desc(&self) -> Vec<u64> {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    pub fn sorted_asc(&self) -> Vec<u64> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v
    }

    /// Errors unless every degree is at most `C(n-1, 2)`.
    pub fn check_degree_bound(&self) -> Result<()> {
        let cap = max_degree(self.len() as u64);
        match self.0.iter().position(|&d| d > cap) {
            Some(i) => Err(Error::Precondition(format!(
                "degree {} at position {i} exceeds C(n-1,2) = {cap}",
                self.0[i]
            ))),
            None => Ok(()),
        }
    }
}

impl From<Vec<u64>> for DegreeSequence {
    fn from(v: Vec<u64>) -> Self {
        Self(v)
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

pub fn handshake_ok(d: &DegreeSequence, t: u64) -> bool {
    assert!(t >= 1, "uniformity must be positive");
    d.sum().is_multiple_of(t as u128)
}

/// `n^(1+eps) >= r`, exact when `eps` has a small denominator.
fn power_at_least(n: u64, eps: &BigRational, r: &BigRational) -> bool {
    if !r.is_positive() {
        return true;
    }
    let p = eps.numer().to_u32();
    let q = eps.denom().to_u32();
    match (p, q) {
        (Some(p), Some(q)) if p + q <= 4000 => {
            // n^((q+p)/q) >= r  <=>  n^(q+p) * den^q >= num^q
            let lhs = num_traits::pow(BigUint::from(n), (p + q) as usize);
            let num = r.numer().to_biguint().unwrap_or_default();
            let den = r.denom().to_biguint().unwrap_or_else(BigUint::one);
            lhs * num_traits::pow(den, q as usize) >= num_traits::pow(num, q as usize)
        }
        _ => (n as f64).powf(1.0 + to_f64(eps)) >= to_f64(r),
    }
}

/// Membership in the (optionally relaxed) class of dense sequences.
///
/// A relaxation of `Some(0)` is the same as `None`. Comparisons against
/// `n^(1+eps)` are exact when `eps` has numerator plus denominator at most
/// 4000 and fall back to `f64` otherwise.
pub fn class_membership(
    d: &DegreeSequence,
    c1: &BigRational,
    c2: &BigRational,
    relaxation: Option<&BigRational>,
) -> Result<bool> {
    if d.is_empty() {
        return Err(Error::InvalidInput("empty degree sequence".into()));
    }
    if !c1.is_positive() || c1 > c2 || *c2 > BigRational::one() {
        return Err(Error::InvalidInput("need 0 < c1 <= c2 <= 1".into()));
    }
    let eps = match relaxation {
        Some(e) if e.is_zero() => None,
        Some(e) if e.is_negative() || *e > BigRational::one() => {
            return Err(Error::InvalidInput("relaxation must lie in (0, 1]".into()))
        }
        other => other,
    };
    if !handshake_ok(d, 3) {
        return Ok(false);
    }
    let n = d.len() as u64;
    let b = from_u64(max_degree(n));
    let lo = c1 * &b;
    let hi = c2 * &b;
    Ok(d.degrees().iter().all(|&x| {
        let x = from_u64(x);
        if x > hi {
            return false;
        }
        match eps {
            None => x >= lo,
            Some(e) => x >= lo || power_at_least(n, e, &(&lo - &x)),
        }
    }))
}

/// Sorted-descending prefix-sum dominance of `a` over `b` with equal totals.
pub fn majorizes(a: &[u64], b: &[u64]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable_by(|x, y| y.cmp(x));
    b.sort_unstable_by(|x, y| y.cmp(x));
    let (mut sa, mut sb) = (0u128, 0u128);
    for (x, y) in a.iter().zip(&b) {
        sa += *x as u128;
        sb += *y as u128;
        if sa < sb {
            return false;
        }
    }
    sa == sb
}

/// Signed ceiling division.
pub fn ceil_div(a: i128, b: i128) -> i128 {
    Integer::div_ceil(&a, &b)
}
