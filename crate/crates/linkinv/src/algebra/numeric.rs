use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use super::rat::Rat;
use crate::Error;

/// Binary fixed point number `v / 2^bits`. Mixed precisions meet at the larger one.
#[derive(Clone, Debug)]
pub struct Fixed {
    v: BigInt,
    bits: u32,
}

pub type CFixed = Complex<Fixed>;

/// Bits needed for `digits` decimal digits plus guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 24
}

impl Fixed {
    pub fn from_rat(r: &Rat, bits: u32) -> Self {
        let n: BigInt = r.numer() << bits;
        Fixed { v: n.div_floor(r.denom()), bits }
    }

    pub fn from_int(i: i64, bits: u32) -> Self {
        Fixed { v: BigInt::from(i) << bits, bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    fn at(&self, bits: u32) -> BigInt {
        if bits >= self.bits {
            &self.v << (bits - self.bits)
        } else {
            &self.v >> (self.bits - bits)
        }
    }

    pub fn to_f64(&self) -> f64 {
        let mut v = self.v.to_f64().unwrap_or(f64::NAN);
        let mut b = self.bits as i32;
        while b > 0 {
            let s = b.min(1000);
            v /= 2f64.powi(s);
            b -= s;
        }
        v
    }

    pub fn abs(&self) -> Self {
        Fixed { v: self.v.abs(), bits: self.bits }
    }

    /// Largest n with 2^-n >= |self|, a cheap size estimate.
    pub fn is_tiny(&self) -> bool {
        self.v.abs() <= BigInt::one()
    }

    /// pi via Machin's formula.
    pub fn pi(bits: u32) -> Self {
        let w = bits + 16;
        let atan_inv = |k: i64| {
            let one = BigInt::one() << w;
            let mut term = one / BigInt::from(k);
            let k2 = BigInt::from(k * k);
            let mut sum = BigInt::zero();
            let mut n = 0i64;
            while !term.is_zero() {
                let t = &term / BigInt::from(2 * n + 1);
                if n % 2 == 0 {
                    sum += t;
                } else {
                    sum -= t;
                }
                term /= &k2;
                n += 1;
            }
            sum
        };
        let v = atan_inv(5) * 16 - atan_inv(239) * 4;
        Fixed { v: v >> 16, bits }
    }

    /// (cos x, sin x) by Taylor series.
    pub fn cos_sin(x: &Fixed) -> (Fixed, Fixed) {
        let bits = x.bits;
        let mut c = Fixed::from_int(1, bits);
        let mut s = Fixed::from_int(0, bits);
        let mut term = Fixed::from_int(1, bits);
        let mut k = 1i64;
        loop {
            term = term * x.clone() / Fixed::from_int(k, bits);
            if term.is_tiny() {
                break;
            }
            match k % 4 {
                1 => s = s + term.clone(),
                2 => c = c - term.clone(),
                3 => s = s - term.clone(),
                _ => c = c + term.clone(),
            }
            k += 1;
        }
        (c, s)
    }

    /// exp(i pi a / b).
    pub fn unit_root(a: i64, b: i64, bits: u32) -> CFixed {
        let (a, b) = (a.rem_euclid(2 * b), b);
        // reduce to [-pi, pi]
        let a = if a > b { a - 2 * b } else { a };
        let th = Fixed::pi(bits) * Fixed::from_int(a, bits) / Fixed::from_int(b, bits);
        let (c, s) = Fixed::cos_sin(&th);
        Complex::new(c, s)
    }
}

impl PartialEq for Fixed {
    fn eq(&self, o: &Self) -> bool {
        let b = self.bits.max(o.bits);
        self.at(b) == o.at(b)
    }
}

impl Zero for Fixed {
    fn zero() -> Self {
        Fixed { v: BigInt::zero(), bits: 0 }
    }
    fn is_zero(&self) -> bool {
        self.v.is_zero()
    }
}

impl One for Fixed {
    fn one() -> Self {
        Fixed { v: BigInt::one(), bits: 0 }
    }
}

impl Add for Fixed {
    type Output = Fixed;
    fn add(self, o: Fixed) -> Fixed {
        let b = self.bits.max(o.bits);
        Fixed { v: self.at(b) + o.at(b), bits: b }
    }
}

impl Sub for Fixed {
    type Output = Fixed;
    fn sub(self, o: Fixed) -> Fixed {
        let b = self.bits.max(o.bits);
        Fixed { v: self.at(b) - o.at(b), bits: b }
    }
}

impl Mul for Fixed {
    type Output = Fixed;
    fn mul(self, o: Fixed) -> Fixed {
        let b = self.bits.max(o.bits);
        Fixed { v: (self.v * o.v) >> (self.bits + o.bits - b), bits: b }
    }
}

impl Div for Fixed {
    type Output = Fixed;
    fn div(self, o: Fixed) -> Fixed {
        let b = self.bits.max(o.bits);
        let n: BigInt = self.v << (b + o.bits - self.bits);
        Fixed { v: n.div_floor(&o.v), bits: b }
    }
}

impl Rem for Fixed {
    type Output = Fixed;
    fn rem(self, o: Fixed) -> Fixed {
        let b = self.bits.max(o.bits);
        Fixed { v: self.at(b).mod_floor(&o.at(b)), bits: b }
    }
}

impl Neg for Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed { v: -self.v, bits: self.bits }
    }
}

impl Num for Fixed {
    type FromStrRadixErr = Error;
    fn from_str_radix(_: &str, _: u32) -> Result<Self, Error> {
        Err(Error::Parse("fixed point numbers are not parsed from text".into()))
    }
}

/// Modulus of a complex fixed point number as f64; adequate for tolerance checks.
pub fn cabs(z: &CFixed) -> f64 {
    z.re.to_f64().hypot(z.im.to_f64())
}

/// Evaluate at complex values of each variable's root `x^{1/scale}`, given by name.
pub fn eval_complex(p: &Poly, assign: &[(&str, CFixed)], bits: u32) -> Result<CFixed, Error> {
    let mut roots = Vec::new();
    let mut invs = Vec::new();
    for v in p.roster().vars() {
        let z = assign
            .iter()
            .find(|(n, _)| *n == v.name)
            .map(|(_, z)| z.clone())
            .ok_or_else(|| Error::MissingAssignment(v.name.clone()))?;
        let one = Complex::new(Fixed::from_int(1, bits), Fixed::from_int(0, bits));
        invs.push(one / z.clone());
        roots.push(z);
    }
    Ok(p.eval_with(&roots, &invs, |c| Complex::new(Fixed::from_rat(c, bits), Fixed::from_int(0, bits))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Roster;
    use crate::algebra::rat::int;

    #[test]
    fn pi_digits() {
        let p = Fixed::pi(bits_for_digits(50));
        let s = (p * Fixed::from_rat(&Rat::from_integer(BigInt::from(10).pow(40)), 200)).v >> 200usize;
        assert_eq!(s.to_string(), "31415926535897932384626433832795028841971");
    }

    #[test]
    fn golden_ratio_from_quantum_two() {
        let bits = bits_for_digits(50);
        let r = Roster::q();
        let p = Poly::var_pow(&r, 0, 1, 2) + Poly::var_pow(&r, 0, -1, 2);
        let z = Fixed::unit_root(1, 10, bits); // q^{1/4} with q = e^{2 pi i / 5}
        let v = eval_complex(&p, &[("q", z)], bits).unwrap();
        assert!((v.re.to_f64() - 1.618_033_988_749_895).abs() < 1e-12);
        assert!(v.im.to_f64().abs() < 1e-30, "{}", v.im.to_f64());
    }

    #[test]
    fn q_minus_one_at_one() {
        let bits = 100;
        let r = Roster::q();
        let p = Poly::var(&r, 0) - Poly::from_rat(&r, &int(1));
        let one = Complex::new(Fixed::from_int(1, bits), Fixed::from_int(0, bits));
        assert!(cabs(&eval_complex(&p, &[("q", one)], bits).unwrap()) == 0.0);
        assert!(matches!(eval_complex(&p, &[], bits), Err(Error::MissingAssignment(_))));
    }
}
