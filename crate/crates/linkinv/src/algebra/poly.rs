use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde_json::{json, Value};
use smallvec::SmallVec;

use super::rat::{fmt_rat, parse_rat, Coeff, Field, Rat, Scalar};
use crate::Error;

/// Exponent vector in scaled units, one entry per roster variable.
pub type Mono = SmallVec<[i32; 4]>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Var {
    pub name: String,
    /// Stored exponent `k` stands for the true exponent `k / scale`.
    pub scale: u32,
}

/// Ordered variable list shared between polynomials.
#[derive(Clone, Debug)]
pub struct Roster(Arc<Vec<Var>>);

impl PartialEq for Roster {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || self.0 == o.0
    }
}
impl Eq for Roster {}

impl Roster {
    pub fn new(vars: Vec<Var>) -> Self {
        Roster(Arc::new(vars))
    }

    pub fn empty() -> Self {
        Roster::new(Vec::new())
    }

    /// `t1..tL` on the half-integer lattice.
    pub fn t(l: usize) -> Self {
        Roster::new((1..=l).map(|i| Var { name: format!("t{i}"), scale: 2 }).collect())
    }

    /// `q` on the quarter-integer lattice.
    pub fn q() -> Self {
        Roster::new(vec![Var { name: "q".into(), scale: 4 }])
    }

    pub fn vars(&self) -> &[Var] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v.name == name)
    }

    pub fn scale(&self, i: usize) -> u32 {
        self.0[i].scale
    }

    pub fn with(&self, v: Var) -> Roster {
        if self.index(&v.name).is_some() {
            return self.clone();
        }
        let mut vs = (*self.0).clone();
        vs.push(v);
        Roster::new(vs)
    }

    /// Union keeping `self`'s order first. Panics on a scale clash.
    pub fn union(&self, o: &Roster) -> Roster {
        if self == o || o.is_empty() {
            return self.clone();
        }
        if self.is_empty() {
            return o.clone();
        }
        let mut vs = (*self.0).clone();
        for v in o.vars() {
            match self.index(&v.name) {
                Some(i) => assert_eq!(vs[i].scale, v.scale, "scale clash on {}", v.name),
                None => vs.push(v.clone()),
            }
        }
        Roster::new(vs)
    }
}

/// Multivariate Laurent polynomial with fractional exponents on fixed lattices.
#[derive(Clone, Debug)]
pub struct LaurentPoly<C> {
    roster: Roster,
    terms: BTreeMap<Mono, C>,
}

pub type Poly = LaurentPoly<Rat>;

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero_in(roster: &Roster) -> Self {
        LaurentPoly { roster: roster.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(roster: &Roster, c: C) -> Self {
        Self::monomial(roster, &vec![0; roster.len()], c)
    }

    pub fn monomial(roster: &Roster, e: &[i32], c: C) -> Self {
        assert_eq!(e.len(), roster.len());
        let mut p = Self::zero_in(roster);
        if !c.is_zero() {
            p.terms.insert(e.iter().copied().collect(), c);
        }
        p
    }

    /// Variable `i` raised to the true exponent `num/den`, which must land on its lattice.
    pub fn var_pow(roster: &Roster, i: usize, num: i32, den: i32) -> Self {
        let s = roster.scale(i) as i32;
        assert_eq!((num * s) % den, 0, "exponent off lattice");
        let mut e = vec![0; roster.len()];
        e[i] = num * s / den;
        Self::monomial(roster, &e, C::one())
    }

    pub fn var(roster: &Roster, i: usize) -> Self {
        Self::var_pow(roster, i, 1, 1)
    }

    pub fn from_terms(roster: &Roster, terms: impl IntoIterator<Item = (Mono, C)>) -> Self {
        let mut p = Self::zero_in(roster);
        for (m, c) in terms {
            assert_eq!(m.len(), roster.len());
            p.add_term(m, c);
        }
        p
    }

    pub fn roster(&self) -> &Roster {
        &self.roster
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[i32]) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> C {
        self.coeff(&vec![0; self.roster.len()])
    }

    fn add_term(&mut self, m: Mono, c: C) {
        if c.is_zero() {
            return;
        }
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

    /// Re-express over a larger roster.
    pub fn in_roster(&self, r: &Roster) -> Self {
        if &self.roster == r {
            return self.clone();
        }
        let map: Vec<usize> = self
            .roster
            .vars()
            .iter()
            .map(|v| {
                let j = r.index(&v.name).expect("roster does not contain variable");
                assert_eq!(r.scale(j), v.scale);
                j
            })
            .collect();
        let mut out = Self::zero_in(r);
        for (m, c) in &self.terms {
            let mut e: Mono = SmallVec::from_elem(0, r.len());
            for (i, &j) in map.iter().enumerate() {
                e[j] = m[i];
            }
            out.terms.insert(e, c.clone());
        }
        out
    }

    fn align(&self, o: &Self) -> (Self, Self) {
        let r = self.roster.union(&o.roster);
        (self.in_roster(&r), o.in_roster(&r))
    }

    pub fn scale_by(&self, c: &C) -> Self {
        let mut out = Self::zero_in(&self.roster);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v.clone() * c.clone());
        }
        out
    }

    /// Multiply by the monomial with scaled exponents `e`.
    pub fn shift(&self, e: &[i32]) -> Self {
        LaurentPoly {
            roster: self.roster.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::constant(&self.roster, C::one());
        let mut b = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                r = &r * &b;
            }
            n >>= 1;
            if n > 0 {
                b = &b * &b;
            }
        }
        r
    }

    /// Rebuild under an exponent map into a new roster, summing collisions.
    pub fn map_exponents(&self, r: &Roster, f: impl Fn(&[i32]) -> Mono) -> Self {
        let mut out = Self::zero_in(r);
        for (m, c) in &self.terms {
            let e = f(m);
            assert_eq!(e.len(), r.len());
            out.add_term(e, c.clone());
        }
        out
    }

    /// Set variable `i` to 1; the variable stays in the roster with exponent 0.
    pub fn at_one(&self, i: usize) -> Self {
        self.map_exponents(&self.roster, |m| {
            let mut e: Mono = m.into();
            e[i] = 0;
            e
        })
    }

    /// Replace each listed variable by its inverse.
    pub fn invert_vars(&self, which: &[usize]) -> Self {
        self.map_exponents(&self.roster, |m| {
            let mut e: Mono = m.into();
            for &i in which {
                e[i] = -e[i];
            }
            e
        })
    }

    /// Lowest and highest scaled exponent of variable `i`.
    pub fn exp_range(&self, i: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|m| m[i]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Coefficients in variable `i` (scaled exponent -> coefficient with that variable removed).
    pub fn collect_in(&self, i: usize) -> BTreeMap<i32, Self> {
        let mut out: BTreeMap<i32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = m.clone();
            let k = e[i];
            e[i] = 0;
            out.entry(k).or_insert_with(|| Self::zero_in(&self.roster)).add_term(e, c.clone());
        }
        out
    }

    /// Generic evaluation given `x^{1/scale}` and its inverse for every variable.
    pub fn eval_with<T: Coeff>(&self, root: &[T], root_inv: &[T], conv: impl Fn(&C) -> T) -> T {
        assert_eq!(root.len(), self.roster.len());
        let mut cache: Vec<BTreeMap<i32, T>> = vec![BTreeMap::new(); root.len()];
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut v = conv(c);
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = cache[i]
                    .entry(e)
                    .or_insert_with(|| {
                        let b = if e > 0 { &root[i] } else { &root_inv[i] };
                        let mut r = T::one();
                        for _ in 0..e.unsigned_abs() {
                            r = r * b.clone();
                        }
                        r
                    })
                    .clone();
                v = v * p;
            }
            acc = acc + v;
        }
        acc
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }
}

impl<C: Scalar> LaurentPoly<C> {
    pub fn from_rat(roster: &Roster, r: &Rat) -> Self {
        Self::constant(roster, C::from_rat(r))
    }
}

impl<C: Scalar> Scalar for LaurentPoly<C> {
    fn from_rat(r: &Rat) -> Self {
        Self::constant(&Roster::empty(), C::from_rat(r))
    }
}

impl<C: Field> LaurentPoly<C> {
    /// Exact quotient, or `None` when `d` does not divide `self`.
    ///
    /// Long division in lexicographic order; every quotient exponent is confined to the
    /// box forced by per-variable degree additivity, so the loop terminates.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (a, d) = self.align(d);
        if a.is_zero() {
            return Some(a);
        }
        let n = a.roster.len();
        let mut lo = vec![0; n];
        let mut hi = vec![0; n];
        for i in 0..n {
            let (al, ah) = a.exp_range(i).unwrap();
            let (dl, dh) = d.exp_range(i).unwrap();
            lo[i] = al - dl;
            hi[i] = ah - dh;
            if lo[i] > hi[i] {
                return None;
            }
        }
        let (lm, lc) = d.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut r = a.clone();
        let mut q = Self::zero_in(&a.roster);
        while let Some((m, c)) = r.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let qm: Mono = m.iter().zip(&lm).map(|(x, y)| x - y).collect();
            if (0..n).any(|i| qm[i] < lo[i] || qm[i] > hi[i]) {
                return None;
            }
            let qc = c / lc.clone();
            for (dm, dc) in &d.terms {
                let e: Mono = dm.iter().zip(&qm).map(|(x, y)| x + y).collect();
                r.add_term(e, -(dc.clone() * qc.clone()));
            }
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Inverse of a single-term polynomial.
    pub fn try_inv(&self) -> Option<Self> {
        if !self.is_monomial() {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let e: Vec<i32> = m.iter().map(|x| -x).collect();
        Some(Self::monomial(&self.roster, &e, C::one() / c.clone()))
    }
}

impl<C: Coeff> PartialEq for LaurentPoly<C> {
    fn eq(&self, o: &Self) -> bool {
        if self.roster == o.roster {
            return self.terms == o.terms;
        }
        let (a, b) = self.align(o);
        a.terms == b.terms
    }
}

impl<C: Coeff> Zero for LaurentPoly<C> {
    fn zero() -> Self {
        Self::zero_in(&Roster::empty())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coeff> One for LaurentPoly<C> {
    fn one() -> Self {
        Self::constant(&Roster::empty(), C::one())
    }
}

impl<'a, C: Coeff> Add<&'a LaurentPoly<C>> for &'a LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, o: &LaurentPoly<C>) -> LaurentPoly<C> {
        if self.roster != o.roster {
            let (a, b) = self.align(o);
            return &a + &b;
        }
        let (big, small) = if self.terms.len() >= o.terms.len() { (self, o) } else { (o, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a, C: Coeff> Sub<&'a LaurentPoly<C>> for &'a LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, o: &LaurentPoly<C>) -> LaurentPoly<C> {
        self + &(-o)
    }
}

impl<'a, C: Coeff> Mul<&'a LaurentPoly<C>> for &'a LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, o: &LaurentPoly<C>) -> LaurentPoly<C> {
        if self.roster != o.roster {
            let (a, b) = self.align(o);
            return &a * &b;
        }
        let mut out = LaurentPoly::zero_in(&self.roster);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let e: Mono = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly {
            roster: self.roster.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl<C: Coeff> $tr for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $f(self, o: Self) -> Self {
                (&self).$f(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<C: Coeff> Neg for LaurentPoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        -&self
    }
}

impl Poly {
    /// Canonical JSON form: roster with scales, terms in lexicographic exponent order.
    pub fn to_json(&self) -> Value {
        json!({
            "vars": self.roster.vars().iter().map(|v| json!({"name": v.name, "scale": v.scale})).collect::<Vec<_>>(),
            "terms": self.terms.iter().map(|(m, c)| json!({"e": m.to_vec(), "c": fmt_rat(c)})).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let bad = |s: &str| Error::Parse(format!("polynomial json: {s}"));
        let vars = v["vars"]
            .as_array()
            .ok_or_else(|| bad("vars"))?
            .iter()
            .map(|x| {
                Ok(Var {
                    name: x["name"].as_str().ok_or_else(|| bad("name"))?.to_string(),
                    scale: x["scale"].as_u64().ok_or_else(|| bad("scale"))? as u32,
                })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        let r = Roster::new(vars);
        let mut p = Self::zero_in(&r);
        for t in v["terms"].as_array().ok_or_else(|| bad("terms"))? {
            let e: Mono = t["e"]
                .as_array()
                .ok_or_else(|| bad("e"))?
                .iter()
                .map(|x| x.as_i64().map(|x| x as i32).ok_or_else(|| bad("exponent")))
                .collect::<Result<_, _>>()?;
            if e.len() != r.len() {
                return Err(bad("exponent length"));
            }
            p.add_term(e, parse_rat(t["c"].as_str().ok_or_else(|| bad("c"))?)?);
        }
        Ok(p)
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for LaurentPoly<C> {
    /// Monomial list such as `-2 * t1^-1 q^{3/4}`; zero prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            let mut first = true;
            for (v, &e) in self.roster.vars().iter().zip(m) {
                if e == 0 {
                    continue;
                }
                write!(f, "{}{}", if first { " * " } else { " " }, v.name)?;
                first = false;
                let g = num_integer::gcd(e, v.scale as i32);
                let (a, b) = (e / g, v.scale as i32 / g);
                match (a, b) {
                    (1, 1) => {}
                    (_, 1) => write!(f, "^{a}")?,
                    _ => write!(f, "^{{{a}/{b}}}")?,
                }
            }
        }
        Ok(())
    }
}


impl<C: Coeff> LaurentPoly<C> {
    /// Substitute `t_j -> q^{alpha_j}` (`t_j` named `t1`, `t2`, ...); an existing `q` is kept.
    pub fn subst_t_to_qpow(&self, alpha: &[i64]) -> Self {
        let qr = Roster::q();
        let src: Vec<(Option<i64>, u32)> = self
            .roster
            .vars()
            .iter()
            .map(|v| {
                if v.name == "q" {
                    (None, v.scale)
                } else {
                    let j: usize = v.name.strip_prefix('t').and_then(|s| s.parse().ok()).expect("t variable");
                    (Some(alpha[j - 1]), v.scale)
                }
            })
            .collect();
        self.map_exponents(&qr, |m| {
            let mut e = 0i64;
            for (k, &(a, s)) in src.iter().enumerate() {
                let num = m[k] as i64 * 4;
                assert_eq!(num % s as i64, 0, "exponent off the quarter lattice");
                e += num / s as i64 * a.unwrap_or(1);
            }
            SmallVec::from_slice(&[e as i32])
        })
    }
}
