use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::poly::{LaurentPoly, Poly, Roster};
use super::rat::{binom, Coeff, Field, Rat, Scalar};
use crate::Error;

/// Truncated Laurent series in `h = q - 1`: known coefficients for `h^lower ..= h^trunc`.
#[derive(Clone, Debug, PartialEq)]
pub struct HSeries<C> {
    lower: i32,
    coeffs: Vec<C>,
}

/// Elements whose invertibility can be decided, used by series inversion.
pub trait TryInv: Sized {
    fn try_inv(&self) -> Option<Self>;
}

impl TryInv for Rat {
    fn try_inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

impl TryInv for f64 {
    fn try_inv(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }
}

impl<C: Field> TryInv for LaurentPoly<C> {
    fn try_inv(&self) -> Option<Self> {
        LaurentPoly::try_inv(self)
    }
}

impl<C: Coeff> HSeries<C> {
    pub fn new(lower: i32, coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "series must know at least one coefficient");
        HSeries { lower, coeffs }
    }

    /// The zero series known through `h^trunc`.
    pub fn zero(trunc: i32) -> Self {
        Self::new(0.min(trunc), vec![C::zero(); (trunc - 0.min(trunc) + 1) as usize])
    }

    pub fn constant(c: C, trunc: i32) -> Self {
        let mut s = Self::zero(trunc.max(0));
        s.coeffs[(0 - s.lower) as usize] = c;
        s.truncate(trunc)
    }

    pub fn lower(&self) -> i32 {
        self.lower
    }

    pub fn trunc(&self) -> i32 {
        self.lower + self.coeffs.len() as i32 - 1
    }

    /// Coefficient of `h^k`; `None` past the truncation order.
    pub fn get(&self, k: i32) -> Option<C> {
        if k > self.trunc() {
            None
        } else if k < self.lower {
            Some(C::zero())
        } else {
            Some(self.coeffs[(k - self.lower) as usize].clone())
        }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Lowest power with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i32> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|i| self.lower + i as i32)
    }

    pub fn leading(&self) -> Option<C> {
        self.valuation().and_then(|v| self.get(v))
    }

    /// Drop everything above `h^t`. Raising the order is not possible.
    pub fn truncate(mut self, t: i32) -> Self {
        if t < self.trunc() {
            let keep = (t - self.lower + 1).max(1) as usize;
            self.coeffs.truncate(keep);
        }
        self
    }

    /// Drop known zero coefficients at the bottom.
    pub fn trim(mut self) -> Self {
        let v = match self.valuation() {
            Some(v) => v,
            None => return self,
        };
        let k = (v - self.lower) as usize;
        self.coeffs.drain(..k);
        self.lower = v;
        self
    }

    /// Multiply by `h^k`.
    pub fn shift(mut self, k: i32) -> Self {
        self.lower += k;
        self
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> HSeries<D> {
        HSeries { lower: self.lower, coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn scale_by(&self, c: &C) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    fn add_impl(&self, o: &Self, sign: bool) -> Self {
        let lo = self.lower.min(o.lower);
        let t = self.trunc().min(o.trunc());
        let coeffs: Vec<C> = (lo..=t.max(lo))
            .map(|k| {
                let a = self.get(k).unwrap_or_else(C::zero);
                let b = o.get(k).unwrap_or_else(C::zero);
                if sign {
                    a + b
                } else {
                    a - b
                }
            })
            .collect();
        HSeries { lower: lo, coeffs }.truncate(t)
    }

    fn mul_impl(&self, o: &Self) -> Self {
        let lo = self.lower + o.lower;
        let t = (self.lower + o.trunc()).min(o.lower + self.trunc());
        let n = (t - lo + 1).max(1) as usize;
        let mut coeffs = vec![C::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= n || a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        HSeries { lower: lo, coeffs }
    }

    pub fn pow(&self, n: u32) -> Self {
        if n == 0 {
            return Self::constant(C::one(), self.trunc() - self.lower);
        }
        let mut r = self.clone();
        for _ in 1..n {
            r = &r * self;
        }
        r
    }
}

impl<C: Coeff + TryInv> HSeries<C> {
    /// Reciprocal series; its lower order is minus the valuation of `self`.
    pub fn inverse(&self) -> Result<Self, Error> {
        let v = self.valuation().ok_or(Error::AllCoefficientsZero)?;
        let a = &self.coeffs[(v - self.lower) as usize..];
        let b0 = a[0].try_inv().ok_or(Error::NotInvertible)?;
        let n = a.len();
        let mut b: Vec<C> = Vec::with_capacity(n);
        b.push(b0.clone());
        for k in 1..n {
            let mut s = C::zero();
            for i in 1..=k {
                if !a[i].is_zero() {
                    s = s + a[i].clone() * b[k - i].clone();
                }
            }
            b.push(-(b0.clone() * s));
        }
        Ok(HSeries { lower: -v, coeffs: b })
    }
}

impl<C: Scalar> HSeries<C> {
    /// `(1 + h)^e` through `h^trunc`.
    pub fn binomial(e: &Rat, trunc: i32) -> Self {
        let n = trunc.max(0) as usize + 1;
        let s = HSeries { lower: 0, coeffs: (0..n).map(|k| C::from_rat(&binom(e, k))).collect() };
        s.truncate(trunc)
    }
}

impl HSeries<Rat> {
    /// Expand a polynomial in `q` alone (`q = 1 + h`) through `h^trunc`.
    pub fn from_q_poly(p: &Poly, trunc: i32) -> Self {
        let r = p.roster();
        let mut acc = Self::zero(trunc);
        if p.is_zero() {
            return acc;
        }
        assert!(r.len() == 1 && r.vars()[0].name == "q", "expected a polynomial in q only");
        let s = r.scale(0) as i64;
        for (m, c) in p.terms() {
            let e = Rat::new((m[0] as i64).into(), s.into());
            acc = &acc + &HSeries::binomial(&e, trunc).scale_by(c);
        }
        acc
    }
}

impl<C: Coeff> HSeries<LaurentPoly<C>> {
    pub fn in_roster(&self, r: &Roster) -> Self {
        self.map(|p| p.in_roster(r))
    }
}

impl<'a, C: Coeff> Add<&'a HSeries<C>> for &'a HSeries<C> {
    type Output = HSeries<C>;
    fn add(self, o: &HSeries<C>) -> HSeries<C> {
        self.add_impl(o, true)
    }
}

impl<'a, C: Coeff> Sub<&'a HSeries<C>> for &'a HSeries<C> {
    type Output = HSeries<C>;
    fn sub(self, o: &HSeries<C>) -> HSeries<C> {
        self.add_impl(o, false)
    }
}

impl<'a, C: Coeff> Mul<&'a HSeries<C>> for &'a HSeries<C> {
    type Output = HSeries<C>;
    fn mul(self, o: &HSeries<C>) -> HSeries<C> {
        self.mul_impl(o)
    }
}

impl<C: Coeff> Neg for &HSeries<C> {
    type Output = HSeries<C>;
    fn neg(self) -> HSeries<C> {
        self.map(|c| -c.clone())
    }
}
