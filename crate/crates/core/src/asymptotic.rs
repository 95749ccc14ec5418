//! Sequences for t-uniform hypergraphs: the width `c(t)`, the `(δ, ε)`
//! schedule, hypergeometric tails, and exact non-graphicality certificates
//! for half/half sequences.
//!
//! The schedule values are cube roots of rationals, so they are carried as
//! [`CubeRoot`] and compared through their cubes.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::binom::binom_big;
use crate::error::{Error, Result};
use crate::exact::{from_f64, to_f64};

/// `2^(1/3) + 4^(-1/3)`, which equals `(27/4)^(1/3)`.
pub const C0: f64 = 1.889_881_574_842_31;

pub const DEFAULT_C_MARGIN: f64 = 1e-3;

/// `c(t) = C t^(-1/3)` with `C = C0 (1 + 10^-3)`.
pub fn width_c(t: u64) -> Result<f64> {
    width_c_with(t, C0 * (1.0 + DEFAULT_C_MARGIN))
}

pub fn width_c_with(t: u64, c: f64) -> Result<f64> {
    if t < 2 {
        return Err(Error::InvalidInput(format!("t must be at least 2, got {t}")));
    }
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::InvalidInput(format!("C must be positive, got {c}")));
    }
    Ok(c * (t as f64).powf(-1.0 / 3.0))
}

/// A non-negative real `x` stored as the rational `x^3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeRoot {
    cube: BigRational,
}

impl CubeRoot {
    pub fn of(cube: BigRational) -> Result<Self> {
        if cube.is_negative() {
            return Err(Error::InvalidInput(format!("negative cube {cube}")));
        }
        Ok(Self { cube })
    }

    pub fn from_rational(x: &BigRational) -> Result<Self> {
        Self::of(x * x * x)
    }

    pub fn cube(&self) -> &BigRational {
        &self.cube
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self { cube: &self.cube * &other.cube }
    }

    pub fn scale(&self, x: &BigRational) -> Result<Self> {
        if x.is_negative() {
            return Err(Error::InvalidInput("negative scale".into()));
        }
        Ok(Self { cube: &self.cube * x * x * x })
    }

    pub fn recip(&self) -> Result<Self> {
        if self.cube.is_zero() {
            return Err(Error::InvalidInput("reciprocal of zero".into()));
        }
        Ok(Self { cube: self.cube.recip() })
    }

    /// The exact value when the cube is a rational cube.
    pub fn as_rational(&self) -> Option<BigRational> {
        let p = self.cube.numer().to_biguint()?;
        let q = self.cube.denom().to_biguint()?;
        let (a, b) = (p.cbrt(), q.cbrt());
        (&a * &a * &a == p && &b * &b * &b == q).then(|| BigRational::new(a.into(), b.into()))
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.cube).cbrt()
    }
}

impl PartialOrd for CubeRoot {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CubeRoot {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cube.cmp(&other.cube)
    }
}

impl fmt::Display for CubeRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "({})^(1/3)", self.cube),
        }
    }
}

fn rat(n: u64, d: u64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub t: u64,
    /// `(t/2)^(-1/3)`
    pub delta: CubeRoot,
    /// `(4t)^(-1/3)`
    pub eps: CubeRoot,
}

impl Schedule {
    /// `δ² ε t`; exactly 1.
    pub fn product(&self) -> CubeRoot {
        let t3 = BigRational::from_integer((self.t as i64).into()).pow(3);
        CubeRoot { cube: self.delta.cube.pow(2) * &self.eps.cube * t3 }
    }

    /// `δ ≥ (ε t)^(-1/2)`, i.e. `δ² ε t ≥ 1`.
    pub fn consistent(&self) -> bool {
        self.product().cube >= BigRational::one()
    }

    /// `ε + δ`. Since `ε = δ/2`, this is `(27/(4t))^(1/3) = C0 t^(-1/3)`.
    pub fn sum(&self) -> CubeRoot {
        CubeRoot { cube: rat(27, 4 * self.t) }
    }
}

pub fn delta_eps(t: u64) -> Result<Schedule> {
    if t < 2 {
        return Err(Error::InvalidInput(format!("t must be at least 2, got {t}")));
    }
    let s = Schedule { t, delta: CubeRoot { cube: rat(2, t) }, eps: CubeRoot { cube: rat(1, 4 * t) } };
    if !s.consistent() {
        return Err(Error::Internal(format!("schedule inconsistent at t = {t}")));
    }
    Ok(s)
}

fn check_hyp(n: u64, t: u64) -> Result<u64> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::InvalidInput(format!("n must be even and positive, got {n}")));
    }
    if t == 0 || t > n {
        return Err(Error::InvalidInput(format!("need 1 <= t <= n, got t = {t}, n = {n}")));
    }
    Ok(n / 2)
}

/// `P(X = k)` for `X ~ Hyp(n, n/2, t)`.
pub fn hypergeom_pmf(n: u64, t: u64, k: u64) -> Result<BigRational> {
    let m = check_hyp(n, t)?;
    if k > t {
        return Ok(BigRational::zero());
    }
    Ok(BigRational::new((binom_big(m, k) * binom_big(m, t - k)).into(), binom_big(n, t).into()))
}

/// `P(|2X - t| > δ t)` for `X ~ Hyp(n, n/2, t)`.
pub fn hypergeom_tail_exact(n: u64, t: u64, delta: &CubeRoot) -> Result<BigRational> {
    let m = check_hyp(n, t)?;
    let threshold = &delta.cube * BigRational::from_integer((t as i64).into()).pow(3);
    let mut hits = BigUint::zero();
    for k in 0..=t.min(m) {
        if t - k > m {
            continue;
        }
        let dev = (2 * k as i64 - t as i64).unsigned_abs();
        if BigRational::from_integer((dev as i64).into()).pow(3) > threshold {
            hits += binom_big(m, k) * binom_big(m, t - k);
        }
    }
    Ok(BigRational::new(hits.into(), binom_big(n, t).into()))
}

/// `Var[X] = (t/4)(n - t)/(n - 1)`.
pub fn hypergeom_variance(n: u64, t: u64) -> Result<BigRational> {
    check_hyp(n, t)?;
    if n == 1 {
        return Ok(BigRational::zero());
    }
    Ok(rat(t, 4) * rat(n - t, n - 1))
}

/// `1/(δ² t)`.
pub fn chebyshev_simple(t: u64, delta: &CubeRoot) -> Result<CubeRoot> {
    if t == 0 || delta.cube.is_zero() {
        return Err(Error::InvalidInput("need t > 0 and δ > 0".into()));
    }
    let t3 = BigRational::from_integer((t as i64).into()).pow(3);
    Ok(CubeRoot { cube: (delta.cube.pow(2) * t3).recip() })
}

/// `4 Var / (δ² t²)` with the exact variance.
pub fn chebyshev_tight(n: u64, t: u64, delta: &CubeRoot) -> Result<CubeRoot> {
    let var = hypergeom_variance(n, t)?;
    if delta.cube.is_zero() {
        return Err(Error::InvalidInput("need δ > 0".into()));
    }
    let t6 = BigRational::from_integer((t as i64).into()).pow(6);
    let four_var = var * BigRational::from_integer(4.into());
    Ok(CubeRoot { cube: four_var.pow(3) / (delta.cube.pow(2) * t6) })
}

/// `Σ_{t1 > t2} C(n/2, t1) C(n/2, t2) (t1 - t2)` over `t1 + t2 = t`.
pub fn max_delta_exact(n: u64, t: u64) -> Result<BigUint> {
    let m = check_hyp(n, t)?;
    let mut total = BigUint::zero();
    for t1 in (t / 2 + 1)..=t.min(m) {
        let t2 = t - t1;
        if t2 > m {
            continue;
        }
        total += binom_big(m, t1) * binom_big(m, t2) * BigUint::from(t1 - t2);
    }
    Ok(total)
}

/// `(ε + δ) t C(n, t)` in floating point.
pub fn schedule_delta_bound(n: u64, t: u64) -> Result<f64> {
    let s = delta_eps(t)?;
    Ok(s.sum().to_f64() * t as f64 * binom_big(n, t).to_f64().unwrap_or(f64::INFINITY))
}

/// `max_delta_exact(n, t) < (ε + δ) t C(n, t)`, decided exactly.
pub fn schedule_bound_dominates(n: u64, t: u64) -> Result<bool> {
    let x = BigRational::from_integer(max_delta_exact(n, t)?.into());
    let s = delta_eps(t)?;
    let k = BigRational::from_integer((binom_big(n, t) * BigUint::from(t)).into());
    Ok(x.pow(3) < s.sum().cube * k.pow(3))
}

#[derive(Debug, Clone, PartialEq)]
pub struct NonGraphicCertificate {
    pub t: u64,
    pub n: u64,
    pub p: Option<BigRational>,
    pub c: Option<f64>,
    pub d_min: BigUint,
    pub d_max: BigUint,
    /// `(n/2)(d_max - d_min)`.
    pub required_delta: BigUint,
    pub max_delta: BigUint,
    /// The band was cut to `[0, C(n-1, t-1)]`.
    pub clipped: bool,
    pub sound: bool,
}

impl NonGraphicCertificate {
    /// `n/2` copies of `d_max` followed by `n/2` copies of `d_min`.
    pub fn sequence(&self) -> Option<Vec<u64>> {
        let hi = self.d_max.to_u64()?;
        let lo = self.d_min.to_u64()?;
        let half = (self.n / 2) as usize;
        Some([vec![hi; half], vec![lo; half]].concat())
    }
}

impl fmt::Display for NonGraphicCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "t={}", self.t)?;
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "d_min={}", self.d_min)?;
        writeln!(f, "d_max={}", self.d_max)?;
        writeln!(f, "required_delta={}", self.required_delta)?;
        writeln!(f, "max_delta={}", self.max_delta)?;
        if self.clipped {
            writeln!(f, "clipped=true")?;
        }
        write!(f, "sound={}", self.sound)
    }
}

/// Certificate for an explicit band.
pub fn certify_band(t: u64, n: u64, d_min: BigUint, d_max: BigUint) -> Result<NonGraphicCertificate> {
    if t < 2 {
        return Err(Error::InvalidInput(format!("t must be at least 2, got {t}")));
    }
    let max_delta = max_delta_exact(n, t)?;
    if d_min > d_max {
        return Err(Error::InvalidInput(format!("empty band [{d_min}, {d_max}]")));
    }
    let required_delta = BigUint::from(n / 2) * (&d_max - &d_min);
    let sound = required_delta > max_delta;
    Ok(NonGraphicCertificate { t, n, p: None, c: None, d_min, d_max, required_delta, max_delta, clipped: false, sound })
}

/// Certificate for the band `[⌈(p - c(t)) B⌉, ⌊(p + c(t)) B⌋]`, `B = C(n-1, t-1)`.
/// `c(t)` is evaluated in floating point and then used exactly, so the
/// verdict is sound whatever the rounding.
pub fn nongraphic_witness(t: u64, p: &BigRational, n: u64) -> Result<NonGraphicCertificate> {
    nongraphic_witness_with(t, p, n, C0 * (1.0 + DEFAULT_C_MARGIN))
}

pub fn nongraphic_witness_with(t: u64, p: &BigRational, n: u64, big_c: f64) -> Result<NonGraphicCertificate> {
    if !p.is_positive() || *p >= BigRational::one() {
        return Err(Error::InvalidInput(format!("p must lie in (0, 1), got {p}")));
    }
    check_hyp(n, t)?;
    let c = width_c_with(t, big_c)?;
    let cr = from_f64(c)?;
    let b = BigRational::from_integer(binom_big(n - 1, t - 1).into());
    let lo = ((p - &cr) * &b).ceil();
    let hi = ((p + &cr) * &b).floor();
    let mut clipped = false;
    let d_min = if lo.is_negative() {
        clipped = true;
        BigUint::zero()
    } else {
        lo.to_integer().to_biguint().expect("non-negative")
    };
    let d_max = if hi > b {
        clipped = true;
        b.to_integer().to_biguint().expect("non-negative")
    } else if hi.is_negative() {
        return Err(Error::InvalidInput("empty band".into()));
    } else {
        hi.to_integer().to_biguint().expect("non-negative")
    };
    let mut cert = certify_band(t, n, d_min, d_max)?;
    cert.p = Some(p.clone());
    cert.c = Some(c);
    cert.clipped = clipped;
    Ok(cert)
}

/// Smallest even `n` in `[lo, hi]` whose witness at `(t, p)` is sound.
pub fn first_sound_n(t: u64, p: &BigRational, lo: u64, hi: u64) -> Result<Option<u64>> {
    let start = lo.max(t) + lo.max(t) % 2;
    for n in (start..=hi).step_by(2) {
        if nongraphic_witness(t, p, n)?.sound {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// `gcd`-free ratio `required / max` as a float, for reporting.
pub fn soundness_ratio(cert: &NonGraphicCertificate) -> f64 {
    if cert.max_delta.is_zero() {
        return f64::INFINITY;
    }
    let g = cert.required_delta.gcd(&cert.max_delta);
    let (a, b) = (&cert.required_delta / &g, &cert.max_delta / &g);
    to_f64(&BigRational::new(a.into(), b.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{is_graphic_exhaustive, DEFAULT_NODE_BUDGET};
    use crate::sequence::DegreeSequence;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn c0_value() {
        assert!((C0 - (2f64.cbrt() + 0.25f64.cbrt())).abs() < 1e-15);
        assert!((C0 - 1.88988).abs() < 1e-5);
        assert!((C0 - (27.0f64 / 4.0).cbrt()).abs() < 1e-15);
        let c = C0 * (1.0 + DEFAULT_C_MARGIN);
        assert!((width_c(8).unwrap() - c * 0.5).abs() < 1e-15);
        assert!(width_c(1).is_err());
        let grid: Vec<f64> = (2..200).map(|t| width_c(t).unwrap()).collect();
        assert!(grid.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn schedule() {
        let s = delta_eps(2).unwrap();
        assert_eq!(s.delta.as_rational(), Some(r(1, 1)));
        assert_eq!(s.eps.as_rational(), Some(r(1, 2)));
        for t in 2..=64 {
            let s = delta_eps(t).unwrap();
            assert_eq!(s.product().cube(), &r(1, 1));
            assert!(s.consistent());
            // ε = δ/2 exactly
            assert_eq!(s.eps.scale(&r(2, 1)).unwrap(), s.delta);
            let sum = s.delta.to_f64() + s.eps.to_f64();
            assert!((sum - s.sum().to_f64()).abs() < 1e-12);
            assert!((sum - C0 * (t as f64).powf(-1.0 / 3.0)).abs() < 1e-12);
            assert!(sum < width_c(t).unwrap());
        }
        assert!(delta_eps(1).is_err());
    }

    #[test]
    fn pmf_n6_t3() {
        let p: Vec<_> = (0..=3).map(|k| hypergeom_pmf(6, 3, k).unwrap()).collect();
        assert_eq!(p, vec![r(1, 20), r(9, 20), r(9, 20), r(1, 20)]);
        let one = CubeRoot::from_rational(&r(1, 1)).unwrap();
        assert!(hypergeom_tail_exact(6, 3, &one).unwrap().is_zero());
        let half = CubeRoot::from_rational(&r(1, 2)).unwrap();
        assert_eq!(hypergeom_tail_exact(6, 3, &half).unwrap(), r(1, 10));
        assert!(hypergeom_pmf(5, 3, 1).is_err());
        assert!(hypergeom_pmf(6, 7, 1).is_err());
    }

    #[test]
    fn chebyshev_chain() {
        for t in 2..=64u64 {
            let s = delta_eps(t).unwrap();
            for n in [2 * t, 4 * t, 10 * t] {
                let tail = CubeRoot::from_rational(&hypergeom_tail_exact(n, t, &s.delta).unwrap()).unwrap();
                let tight = chebyshev_tight(n, t, &s.delta).unwrap();
                let simple = chebyshev_simple(t, &s.delta).unwrap();
                assert!(tail <= tight, "t={t} n={n}");
                assert!(tight < simple, "t={t} n={n}");
                assert_eq!(simple, s.eps);
            }
        }
    }

    #[test]
    fn max_delta_examples() {
        assert_eq!(max_delta_exact(4, 2).unwrap(), BigUint::from(2u32));
        assert_eq!(max_delta_exact(6, 3).unwrap(), BigUint::from(12u32));
        assert!(max_delta_exact(7, 3).is_err());
        for n in [10, 20, 50] {
            assert!(schedule_bound_dominates(n, 3).unwrap());
            let exact = max_delta_exact(n, 3).unwrap().to_f64().unwrap();
            assert!(exact < schedule_delta_bound(n, 3).unwrap());
        }
    }

    // Brute force over all t-subsets, independent of the closed form.
    fn brute_max_delta(n: u64, t: u64) -> u64 {
        let m = n / 2;
        (0u64..1 << n)
            .filter(|s| s.count_ones() as u64 == t)
            .map(|s| {
                let a = (s & ((1 << m) - 1)).count_ones() as i64;
                let b = t as i64 - a;
                (a - b).max(0) as u64
            })
            .sum()
    }

    #[test]
    fn max_delta_brute() {
        for n in (2..=12).step_by(2) {
            for t in 1..=n {
                assert_eq!(max_delta_exact(n, t).unwrap(), BigUint::from(brute_max_delta(n, t)), "n={n} t={t}");
            }
        }
    }

    #[test]
    fn fixture_certificate() {
        let c = certify_band(3, 6, BigUint::from(0u32), BigUint::from(10u32)).unwrap();
        assert_eq!(c.required_delta, BigUint::from(30u32));
        assert_eq!(c.max_delta, BigUint::from(12u32));
        assert!(c.sound);
        let d = DegreeSequence::new(c.sequence().unwrap());
        assert_eq!(d.degrees(), &[10, 10, 10, 0, 0, 0]);
        assert!(!is_graphic_exhaustive(&d, DEFAULT_NODE_BUDGET).is_graphic());
        assert!(certify_band(3, 6, BigUint::from(5u32), BigUint::from(4u32)).is_err());
    }

    #[test]
    fn sound_implies_nongraphic_small() {
        for n in [4u64, 6] {
            let b = crate::binom::max_degree(n);
            for lo in 0..=b {
                for hi in lo..=b {
                    let c = certify_band(3, n, BigUint::from(lo), BigUint::from(hi)).unwrap();
                    if c.sound {
                        let d = DegreeSequence::new(c.sequence().unwrap());
                        assert!(!is_graphic_exhaustive(&d, DEFAULT_NODE_BUDGET).is_graphic(), "{d}");
                    }
                }
            }
        }
    }

    #[test]
    fn witness_behaviour() {
        let half = r(1, 2);
        // C(63, 63) = 1 leaves no integer in the band.
        assert!(nongraphic_witness(64, &half, 64).is_err());
        for n in [128, 256, 640] {
            let c = nongraphic_witness(64, &half, n).unwrap();
            assert!(c.sound && !c.clipped, "n={n}");
        }
        assert_eq!(first_sound_n(8, &half, 8, 100).unwrap(), Some(8));
        let clipped = nongraphic_witness(3, &half, 6).unwrap();
        assert!(clipped.clipped);
        assert!(nongraphic_witness(3, &r(3, 2), 6).is_err());
        assert!(nongraphic_witness(3, &half, 7).is_err());
    }

    #[test]
    fn unsound_claims_nothing() {
        let c = certify_band(3, 6, BigUint::from(4u32), BigUint::from(6u32)).unwrap();
        assert!(!c.sound);
        assert!(c.to_string().ends_with("sound=false"));
    }

    proptest! {
        #[test]
        fn halves_symmetric(m in 1u64..20, t in 1u64..40) {
            let n = 2 * m;
            prop_assume!(t <= n);
            // Swapping halves maps t1 - t2 to t2 - t1, so the negative side sums the same.
            let mut neg = BigUint::zero();
            for t2 in (t / 2 + 1)..=t.min(m) {
                let t1 = t - t2;
                if t1 <= m {
                    neg += binom_big(m, t1) * binom_big(m, t2) * BigUint::from(t2 - t1);
                }
            }
            prop_assert_eq!(max_delta_exact(n, t).unwrap(), neg);
        }

        #[test]
        fn tail_below_tight(m in 1u64..30, t in 1u64..60, num in 1i64..40) {
            let n = 2 * m;
            prop_assume!(t <= n);
            let delta = CubeRoot::from_rational(&r(num, 20)).unwrap();
            let tail = CubeRoot::from_rational(&hypergeom_tail_exact(n, t, &delta).unwrap()).unwrap();
            prop_assert!(tail <= chebyshev_tight(n, t, &delta).unwrap());
            prop_assert!(chebyshev_tight(n, t, &delta).unwrap() <= chebyshev_simple(t, &delta).unwrap());
        }
    }
}
