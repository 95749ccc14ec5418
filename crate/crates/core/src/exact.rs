//! Exact rational helpers.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Parses a decimal literal such as `0.72`, `-1.5e-3` or `7` exactly.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidInput(format!("not a decimal number: {s:?}"));
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = t[i + 1..].parse().map_err(|_| bad())?;
            (&t[..i], e)
        }
        None => (t, 0),
    };
    let (neg, body) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = digits.parse().map_err(|_| bad())?;
    if neg {
        num = -num;
    }
    let scale = exp - frac_part.len() as i64;
    if scale.unsigned_abs() > 10_000 {
        return Err(bad());
    }
    let ten = BigInt::from(10u32);
    let p = num_traits::pow(ten, scale.unsigned_abs() as usize);
    Ok(if scale >= 0 {
        BigRational::from_integer(num * p)
    } else {
        BigRational::new(num, p)
    })
}

pub fn from_u64(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::InvalidInput(format!("non-finite value {x}")))
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `floor(c * x)` for non-negative results.
pub fn floor_mul(c: &BigRational, x: &BigUint) -> Result<BigUint> {
    let v = c * BigRational::from_integer(BigInt::from(x.clone()));
    v.floor()
        .to_integer()
        .to_biguint()
        .ok_or_else(|| Error::InvalidInput("negative product".into()))
}

pub fn floor_mul_u64(c: &BigRational, x: u64) -> Result<u64> {
    floor_mul(c, &BigUint::from(x))?
        .to_u64()
        .ok_or_else(|| Error::InvalidInput("product exceeds u64".into()))
}

/// Checks `0 < x <= 1`.
pub fn in_unit_interval(x: &BigRational) -> bool {
    x.is_positive() && *x <= BigRational::one()
}

/// Renders `x` with `sig` significant digits in plain decimal notation.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i64;
    let decimals = (sig as i64 - 1 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}
