//! Binomial coefficients.

use num_bigint::BigUint;
use num_traits::One;

/// `C(x, 2)`.
pub fn choose2(x: u64) -> u64 {
    if x < 2 {
        0
    } else {
        x * (x - 1) / 2
    }
}

/// `C(x, 3)`.
pub fn choose3(x: u64) -> u64 {
    if x < 3 {
        0
    } else {
        let x = x as u128;
        (x * (x - 1) * (x - 2) / 6) as u64
    }
}

/// Largest degree a vertex can have in a 3-graph on `n` vertices.
pub fn max_degree(n: u64) -> u64 {
    choose2(n.saturating_sub(1))
}

pub fn binom_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(choose2(0), 0);
        assert_eq!(choose2(5), 10);
        assert_eq!(choose3(6), 20);
        assert_eq!(max_degree(7), 15);
        assert_eq!(max_degree(0), 0);
        assert_eq!(binom_big(10, 3), BigUint::from(120u32));
        assert_eq!(binom_big(3, 5), BigUint::default());
        assert_eq!(binom_big(60, 30).to_string(), "118264581564861424");
    }

    #[test]
    fn pascal() {
        for n in 1..40u64 {
            for k in 1..n {
                assert_eq!(binom_big(n, k), binom_big(n - 1, k - 1) + binom_big(n - 1, k));
            }
            assert_eq!(binom_big(n, 2), BigUint::from(choose2(n)));
            assert_eq!(binom_big(n, 3), BigUint::from(choose3(n)));
        }
    }
}
