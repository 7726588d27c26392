use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::One;
use smallvec::SmallVec;

use super::rat::{factorial, Coeff, Rat, Scalar};
use crate::Error;

pub type JetMono = SmallVec<[u8; 24]>;

/// Truncated polynomial in a fixed set of variables.
///
/// Each variable carries a weight; monomials whose weighted degree exceeds `cap` are
/// discarded. Unit weights give the plain total-degree truncation.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsJet<C> {
    weights: Arc<Vec<u32>>,
    cap: u32,
    terms: BTreeMap<JetMono, C>,
}

impl<C: Coeff> EpsJet<C> {
    pub fn zero(weights: &Arc<Vec<u32>>, cap: u32) -> Self {
        EpsJet { weights: weights.clone(), cap, terms: BTreeMap::new() }
    }

    pub fn constant(weights: &Arc<Vec<u32>>, cap: u32, c: C) -> Self {
        let mut j = Self::zero(weights, cap);
        j.add_term(SmallVec::from_elem(0, weights.len()), c);
        j
    }

    /// `c * x_i`.
    pub fn var(weights: &Arc<Vec<u32>>, cap: u32, i: usize, c: C) -> Self {
        let mut j = Self::zero(weights, cap);
        let mut m: JetMono = SmallVec::from_elem(0, weights.len());
        m[i] = 1;
        if weights[i] <= cap {
            j.add_term(m, c);
        }
        j
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn weights(&self) -> &Arc<Vec<u32>> {
        &self.weights
    }

    pub fn terms(&self) -> impl Iterator<Item = (&JetMono, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self, m: &[u8]) -> u32 {
        m.iter().zip(self.weights.iter()).map(|(&e, &w)| e as u32 * w).sum()
    }

    pub fn constant_term(&self) -> C {
        self.terms.get(&JetMono::from_elem(0, self.nvars())[..]).cloned().unwrap_or_else(C::zero)
    }

    fn add_term(&mut self, m: JetMono, c: C) {
        if c.is_zero() {
            return;
        }
        debug_assert!(self.degree(&m) <= self.cap);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> EpsJet<D> {
        let mut out = EpsJet::zero(&self.weights, self.cap);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn scale_by(&self, c: &C) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.weights, o.weights, "jets over different variables");
    }

    /// Product truncated at the smaller of the two caps.
    pub fn mul_jet(&self, o: &Self) -> Self {
        self.check(o);
        let cap = self.cap.min(o.cap);
        let mut out = Self::zero(&self.weights, cap);
        let bd: Vec<(u32, &JetMono, &C)> = {
            let mut v: Vec<_> = o.terms.iter().map(|(m, c)| (o.degree(m), m, c)).collect();
            v.sort_by_key(|x| x.0);
            v
        };
        for (ma, ca) in &self.terms {
            let da = self.degree(ma);
            for &(db, mb, cb) in &bd {
                if da + db > cap {
                    break;
                }
                let m: JetMono = ma.iter().zip(mb.iter()).map(|(x, y)| x + y).collect();
                out.add_term(m, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::constant(&self.weights, self.cap, C::one());
        for _ in 0..n {
            r = r.mul_jet(self);
        }
        r
    }

    /// Part of weighted degree exactly zero removed.
    pub fn without_constant(&self) -> Self {
        let mut j = self.clone();
        j.terms.remove(&JetMono::from_elem(0, self.nvars())[..]);
        j
    }

    /// Coefficient of a monomial times the product of factorials of its exponents, i.e.
    /// the mixed partial derivative at the origin.
    pub fn derivative_at_zero(&self, m: &[u8]) -> C
    where
        C: Scalar,
    {
        let c = match self.terms.get(m) {
            Some(c) => c.clone(),
            None => return C::zero(),
        };
        let f = m.iter().fold(Rat::one(), |a, &e| a * Rat::from_integer(factorial(e as u32)));
        c * C::from_rat(&f)
    }
}

impl<C: Scalar> EpsJet<C> {
    /// `exp(j)` for a jet without constant term.
    pub fn exp(&self) -> Result<Self, Error> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut acc = Self::constant(&self.weights, self.cap, C::one());
        let mut p = acc.clone();
        let mut k = 1u32;
        loop {
            p = p.mul_jet(self);
            if p.is_empty() {
                break;
            }
            let inv = C::from_rat(&Rat::new(1.into(), factorial(k)));
            acc = &acc + &p.scale_by(&inv);
            k += 1;
        }
        Ok(acc)
    }
}

impl<'a, C: Coeff> Add<&'a EpsJet<C>> for &'a EpsJet<C> {
    type Output = EpsJet<C>;
    fn add(self, o: &EpsJet<C>) -> EpsJet<C> {
        self.check(o);
        let cap = self.cap.min(o.cap);
        let mut out = EpsJet::zero(&self.weights, cap);
        for (m, c) in self.terms.iter().chain(o.terms.iter()) {
            if out.degree(m) <= cap {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }
}

impl<'a, C: Coeff> Sub<&'a EpsJet<C>> for &'a EpsJet<C> {
    type Output = EpsJet<C>;
    fn sub(self, o: &EpsJet<C>) -> EpsJet<C> {
        self + &(-o)
    }
}

impl<'a, C: Coeff> Mul<&'a EpsJet<C>> for &'a EpsJet<C> {
    type Output = EpsJet<C>;
    fn mul(self, o: &EpsJet<C>) -> EpsJet<C> {
        self.mul_jet(o)
    }
}

impl<C: Coeff> Neg for &EpsJet<C> {
    type Output = EpsJet<C>;
    fn neg(self) -> EpsJet<C> {
        self.map(|c| -c.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{int, rat};

    fn w(n: usize) -> Arc<Vec<u32>> {
        Arc::new(vec![1; n])
    }

    #[test]
    fn exp_single() {
        let ws = w(1);
        let e = EpsJet::var(&ws, 2, 0, int(1));
        let x = e.exp().unwrap();
        assert_eq!(x.constant_term(), int(1));
        assert_eq!(x.len(), 3);
        assert_eq!(x.derivative_at_zero(&[2]), int(1));
        assert_eq!(*x.terms().last().unwrap().1, rat(1, 2));
    }

    #[test]
    fn product_truncates() {
        let ws = w(2);
        let a = EpsJet::var(&ws, 1, 0, int(1));
        let b = EpsJet::var(&ws, 1, 1, int(1));
        assert!(a.mul_jet(&b).is_empty());
    }

    #[test]
    fn exp_homomorphism() {
        let ws = w(2);
        let a = EpsJet::var(&ws, 2, 0, int(1));
        let b = EpsJet::var(&ws, 2, 1, int(1));
        let lhs = (&a + &b).exp().unwrap();
        let rhs = a.exp().unwrap().mul_jet(&b.exp().unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn exp_needs_zero_constant() {
        let ws = w(1);
        let c = EpsJet::constant(&ws, 2, int(1));
        assert!(matches!(c.exp(), Err(Error::NonzeroConstantTerm)));
    }

    #[test]
    fn weights_truncate() {
        let ws = Arc::new(vec![1, 2]);
        let mu = EpsJet::var(&ws, 3, 1, int(1));
        assert_eq!(mu.pow(2).len(), 0);
        assert_eq!(mu.pow(1).len(), 1);
    }
}

impl<C: Coeff> crate::algebra::matrix::RingElem for EpsJet<C> {
    fn mul_ref(&self, o: &Self) -> Self {
        self.mul_jet(o)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn is_zero_elem(&self) -> bool {
        self.is_empty()
    }
}
