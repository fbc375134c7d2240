//! Exact rational arithmetic, Euler's totient and small finite fields.

mod field;
mod rational;

pub use field::{FieldError, FieldTable};
pub use rational::{Rat, RatError};

/// Euler's totient function.
pub fn euler_phi(m: u64) -> Result<u64, RatError> {
    if m == 0 {
        return Err(RatError::PhiOfZero);
    }
    let mut n = m;
    let mut phi = m;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            phi -= phi / p;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    Ok(phi)
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_small_values() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(7).unwrap(), 6);
        assert_eq!(euler_phi(12).unwrap(), 4);
        assert_eq!(euler_phi(0), Err(RatError::PhiOfZero));
    }

    #[test]
    fn phi_divisor_sum_identity() {
        // Σ_{d|m} φ(m/d) = m for all m ≤ 10⁴
        for m in 1..=10_000u64 {
            let total: u64 = divisors(m).iter().map(|&d| euler_phi(m / d).unwrap()).sum();
            assert_eq!(total, m, "identity fails at m = {m}");
        }
    }

    #[test]
    fn divisors_of_12() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(8), vec![1, 2, 4, 8]);
    }
}
