use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

/// Exact rational number, always kept reduced with a positive denominator.
pub type Rat = BigRational;

/// Commutative ring with identity. Everything in this crate is generic over it.
pub trait Coeff:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
        + Send
        + Sync
{
}

/// A ring that contains the rationals, so that `1/k!` and binomial factors make sense.
pub trait Scalar: Coeff {
    fn from_rat(r: &Rat) -> Self;
}

/// A scalar ring in which nonzero elements can be divided.
pub trait Field: Scalar + Div<Output = Self> {}
impl<T: Scalar + Div<Output = T>> Field for T {}

impl Scalar for Rat {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

impl Scalar for f64 {
    fn from_rat(r: &Rat) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    fn from_rat(r: &Rat) -> Self {
        r.to_f32().unwrap_or(f32::NAN)
    }
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// "num/den" with the denominator always present.
pub fn fmt_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Generalized binomial coefficient e(e-1)...(e-k+1)/k!.
pub fn binom(e: &Rat, k: usize) -> Rat {
    let mut r = Rat::one();
    for i in 0..k {
        r = r * (e - int(i as i64)) / int(i as i64 + 1);
    }
    r
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

/// True when the denominator is a power of two.
pub fn dyadic(r: &Rat) -> bool {
    let mut d = r.denom().abs();
    let two = BigInt::from(2);
    while (&d % &two).is_zero() {
        d /= &two;
    }
    d.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_half() {
        let h = rat(-1, 2);
        assert_eq!(binom(&h, 0), int(1));
        assert_eq!(binom(&h, 1), rat(-1, 2));
        assert_eq!(binom(&h, 2), rat(3, 8));
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["3/4", "-7/1", "0/1"] {
            assert_eq!(fmt_rat(&parse_rat(s).unwrap()), s);
        }
        assert_eq!(parse_rat("6/4").unwrap(), rat(3, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn dyadic_check() {
        assert!(dyadic(&rat(3, 8)));
        assert!(!dyadic(&rat(1, 6)));
    }
}
