//! Arbitrary-precision rationals, always reduced, never floating point.


use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RatError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("totient of zero is undefined")]
    PhiOfZero,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

/// An exact rational number. The denominator is kept positive and the
/// fraction reduced after every operation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(num: i64, den: i64) -> Result<Rat, RatError> {
        if den == 0 {
            return Err(RatError::ZeroDenominator);
        }
        Ok(Rat(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    /// `num/den` for known-nonzero denominators; panics on zero.
    pub fn frac(num: i64, den: i64) -> Rat {
        Rat::new(num, den).expect("nonzero denominator")
    }

    pub fn int(n: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Rat {
        Rat(BigRational::from_integer(n))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Result<Rat, RatError> {
        if den.is_zero() {
            return Err(RatError::ZeroDenominator);
        }
        Ok(Rat(BigRational::new(num, den)))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn recip(&self) -> Result<Rat, RatError> {
        if self.is_zero() {
            return Err(RatError::ZeroDenominator);
        }
        Ok(Rat(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rat) -> Result<Rat, RatError> {
        if rhs.is_zero() {
            return Err(RatError::ZeroDenominator);
        }
        Ok(Rat(&self.0 / &rhs.0))
    }

    pub fn pow(&self, exp: i32) -> Rat {
        Rat(self.0.pow(exp))
    }

    /// Integer floor of the `n`-th root of a big natural number.
    pub fn nth_root_floor(value: &BigUint, n: u32) -> BigUint {
        value.nth_root(n)
    }

    pub fn to_f64_lossy(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl Add for &Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        Rat(&self.0 + &rhs.0)
    }
}

impl Sub for &Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        Rat(&self.0 - &rhs.0)
    }
}

impl Mul for &Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        Rat(&self.0 * &rhs.0)
    }
}

impl Div for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

macro_rules! owned_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                (&self).$method(&rhs)
            }
        }
    )*};
}
owned_ops!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rat({self})")
    }
}

impl FromStr for Rat {
    type Err = RatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num = BigInt::from_str(num).map_err(|_| RatError::Parse(s.to_string()))?;
        let den = BigInt::from_str(den).map_err(|_| RatError::Parse(s.to_string()))?;
        Rat::from_big(num, den)
    }
}

impl PartialEq<(i64, i64)> for Rat {
    fn eq(&self, other: &(i64, i64)) -> bool {
        *self == Rat::frac(other.0, other.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_sums_from_displayed_fractions() {
        // 307/360 + 17/120 = 179/180 and 307/360 + 47/360 = 59/60
        assert_eq!(
            &Rat::frac(307, 360) + &Rat::frac(17, 120),
            Rat::frac(179, 180)
        );
        assert_eq!(
            &Rat::frac(307, 360) + &Rat::frac(47, 360),
            Rat::frac(59, 60)
        );
    }

    #[test]
    fn additive_inverse() {
        let x = Rat::frac(-355, 113);
        assert!((&x + &(-&x)).is_zero());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            Rat::one().checked_div(&Rat::zero()),
            Err(RatError::ZeroDenominator)
        );
        assert_eq!(Rat::new(1, 0), Err(RatError::ZeroDenominator));
    }

    #[test]
    fn reduced_with_positive_denominator() {
        let x = Rat::frac(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(x.to_string(), "-3/2");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["307/360", "-5", "52931/52955", "0"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!("1/0".parse::<Rat>().is_err());
        assert!("x/2".parse::<Rat>().is_err());
    }

    #[test]
    fn total_order() {
        let mut xs = vec![
            Rat::frac(1, 3),
            Rat::frac(-1, 2),
            Rat::int(2),
            Rat::frac(5, 16),
        ];
        xs.sort();
        assert_eq!(
            xs,
            vec![
                Rat::frac(-1, 2),
                Rat::frac(5, 16),
                Rat::frac(1, 3),
                Rat::int(2)
            ]
        );
    }

    #[test]
    fn floor_semantics() {
        assert_eq!(Rat::frac(7, 2).floor_int(), BigInt::from(3));
        assert_eq!(Rat::frac(-7, 2).floor_int(), BigInt::from(-4));
        assert_eq!(Rat::int(4).floor_int(), BigInt::from(4));
    }

    /// Cross-multiplication oracle: a/b ∘ c/d computed with raw big integers.
    fn oracle_add(a: i64, b: i64, c: i64, d: i64) -> (BigInt, BigInt) {
        let num = BigInt::from(a) * BigInt::from(d) + BigInt::from(c) * BigInt::from(b);
        let den = BigInt::from(b) * BigInt::from(d);
        (num, den)
    }

    fn oracle_mul(a: i64, b: i64, c: i64, d: i64) -> (BigInt, BigInt) {
        (BigInt::from(a) * BigInt::from(c), BigInt::from(b) * BigInt::from(d))
    }

    fn cross_eq(r: &Rat, (num, den): (BigInt, BigInt)) -> bool {
        // r == num/den  ⟺  r.num * den == num * r.den
        r.numer() * &den == num * r.denom()
    }

    fn cross_cmp(a: i64, b: i64, c: i64, d: i64) -> std::cmp::Ordering {
        // sign-aware comparison of a/b vs c/d by cross multiplication
        let lhs = BigInt::from(a) * BigInt::from(d) * BigInt::from(b.signum() * d.signum());
        let rhs = BigInt::from(c) * BigInt::from(b) * BigInt::from(b.signum() * d.signum());
        lhs.cmp(&rhs)
    }

    #[test]
    fn agrees_with_cross_multiplication_oracle() {
        // deterministic pseudo-random pairs, 10⁴ of them
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..10_000 {
            let a = (next() % 2001) as i64 - 1000;
            let b = (next() % 1000) as i64 + 1;
            let c = (next() % 2001) as i64 - 1000;
            let d = (next() % 1000) as i64 + 1;
            let (x, y) = (Rat::frac(a, b), Rat::frac(c, d));
            assert!(cross_eq(&(&x + &y), oracle_add(a, b, c, d)));
            assert!(cross_eq(&(&x * &y), oracle_mul(a, b, c, d)));
            assert!(cross_eq(&(&x - &y), oracle_add(a, b, -c, d)));
            assert_eq!(x.cmp(&y), cross_cmp(a, b, c, d));
            if c != 0 {
                let q = x.checked_div(&y).unwrap();
                assert!(cross_eq(&q, oracle_mul(a, b, d, c)));
            }
        }
    }
}
