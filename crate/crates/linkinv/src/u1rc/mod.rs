//! The U(1)-reducible-connection series of a braid closure.
//!
//! [`u1rc_series`] returns `h Jhr` order by order as `num_n / D^{p_n}` with
//! `D = det(1 - Q B)` and `p_n <= 2n + 1`. The production route sums the transfer-matrix
//! trace over Verma-module states ([`statesum`]); [`jet`] evaluates the same series through
//! the parametrized Burau determinant and is kept as an independent check at low order.

pub mod ctable;
pub mod jet;
pub mod statesum;
pub mod tpoly;

use num_traits::{One, Zero};
use serde_json::{json, Value};
use smallvec::SmallVec;

pub use ctable::{gen_c_table, CTable};
pub use jet::{build_param_burau, u1rc_series_jet, ParamBurau};
pub use tpoly::{gen_t_polys, TTable};

use crate::algebra::frac::DenPowerFrac;
use crate::algebra::matrix::Mat;
use crate::algebra::poly::{Roster, Var};
use crate::algebra::rat::{binom, fmt_rat, int, Rat};
use crate::algebra::series::HSeries;
use crate::braid::{BraidWord, LinkClosure};
use crate::burau::{alexander_conway, burau_of_braid, AlexanderResult};
use crate::{Error, Poly, PolyFrac, RatSeries};

#[derive(Clone, Debug, PartialEq)]
pub struct U1RCSeries {
    pub components: usize,
    /// `D = det(1 - Q B)`.
    pub d: Poly,
    /// Coefficient of `h^n` in `h Jhr`.
    pub orders: Vec<PolyFrac>,
    /// Exponent of `q` in the prefactor.
    pub q_exp: Rat,
    /// Scaled exponents of the prefactor monomial in `t_1..t_L` (besides `1 - t_1^{-1}`).
    pub t_exp: Vec<i32>,
    pub linking: Vec<Vec<i64>>,
    pub alexander: AlexanderResult,
}

impl U1RCSeries {
    pub fn order(&self) -> usize {
        self.orders.len() - 1
    }

    /// Highest order through which the resummed colored series is determined.
    pub fn resummable_order(&self) -> usize {
        if self.components >= 2 {
            self.order().saturating_sub(1)
        } else {
            self.order()
        }
    }

    /// `lk(alpha) = (1/2) sum_{i<j} l_ij alpha_i alpha_j`.
    pub fn lk(&self, alpha: &[i64]) -> Rat {
        let mut s = 0i64;
        for i in 0..self.components {
            for j in i + 1..self.components {
                s += self.linking[i][j] * alpha[i] * alpha[j];
            }
        }
        Rat::new(s.into(), 2.into())
    }

    /// Value of order `n` as a fraction over `D` brought to power `2n+1`.
    pub fn at_full_power(&self, n: usize) -> PolyFrac {
        self.orders[n].with_pow(2 * n as u32 + 1)
    }

    /// Same series as `o`, order by order, after relabelling components of `o` by `perm`.
    pub fn same_as(&self, o: &U1RCSeries, perm: &[usize]) -> bool {
        if self.components != o.components || self.orders.len() != o.orders.len() {
            return false;
        }
        let r = Roster::t(self.components);
        let relabel = |p: &Poly| {
            p.in_roster(&r).map_exponents(&r, |m| {
                let mut e: SmallVec<[i32; 4]> = SmallVec::from_elem(0, m.len());
                for (i, &x) in m.iter().enumerate() {
                    e[perm[i]] = x;
                }
                e
            })
        };
        self.orders.iter().zip(&o.orders).all(|(a, b)| {
            &a.num * &relabel(&b.den).pow(b.pow) == &relabel(&b.num) * &a.den.pow(a.pow)
        })
    }

    pub fn to_json(&self) -> Value {
        let orders: Vec<Value> = self
            .orders
            .iter()
            .enumerate()
            .map(|(n, f)| json!({"n": n, "num": f.num.to_json(), "den_pow": f.pow}))
            .collect();
        let t_exp: Vec<String> = self.t_exp.iter().map(|&e| fmt_rat(&Rat::new(e.into(), 2.into()))).collect();
        json!({
            "L": self.components,
            "D": self.d.to_json(),
            "orders": orders,
            "prefactor": {
                "factor": (&Poly::constant(&Roster::t(self.components), int(1))
                    - &Poly::var_pow(&Roster::t(self.components), 0, -1, 1)).to_json(),
                "q_exp": fmt_rat(&self.q_exp),
                "t_exp": t_exp,
                "linking": self.linking,
                "alexander": self.alexander.to_json(),
            }
        })
    }
}

/// `D(x) = det(1 - x Q B)` as coefficients of `x^0, x^1, ...`.
pub fn d_of_x(b: &BraidWord, c: &LinkClosure) -> Vec<Poly> {
    let l = c.components;
    let rt = Roster::t(l);
    let rx = rt.with(Var { name: "x".into(), scale: 1 });
    let bm = burau_of_braid(b, c);
    let n = b.strands();
    let x = Poly::var(&rx, l);
    let a = Mat::from_fn(n, n, |i, j| {
        let id = if i == j { Poly::constant(&rx, int(1)) } else { Poly::zero_in(&rx) };
        if i == 0 {
            id
        } else {
            &id - &(&x * &bm[(i, j)].in_roster(&rx))
        }
    });
    let det = a.det_bareiss().in_roster(&rx);
    let by = det.collect_in(l);
    let top = by.keys().copied().max().unwrap_or(0).max(0) as usize;
    (0..=top)
        .map(|e| match by.get(&(e as i32)) {
            Some(p) => p.map_exponents(&rt, |m| m[..l].into()),
            None => Poly::zero_in(&rt),
        })
        .collect()
}

/// Prefactor pieces: `(q exponent, scaled t exponents)`.
pub fn prefactor(c: &LinkClosure) -> (Rat, Vec<i32>) {
    let l = c.components;
    let mut q2 = 0i64;
    for j in 0..l {
        q2 += c.lk(j, j) - c.strands_per_component[j] as i64;
    }
    q2 += c.off_diagonal_sum();
    let t: Vec<i32> = (0..l).map(|j| (c.strands_per_component[j] as i64 - c.column_sum(j)) as i32).collect();
    (Rat::new(q2.into(), 2.into()), t)
}

/// Apply `(1 - t_1^{-1}) (1 + h) q^{q_exp} t^{t_exp}` to numerators over `D^{2K+1}`.
fn apply_prefactor(raw: &[Poly], d0: &Poly, c: &LinkClosure) -> (Vec<Poly>, Rat, Vec<i32>) {
    let (qe, te) = prefactor(c);
    let r = Roster::t(c.components);
    let mono = &Poly::monomial(&r, &te, int(1)) * &(&Poly::constant(&r, int(1)) - &Poly::var_pow(&r, 0, -1, 1));
    let e = &qe + &int(1);
    let d2 = d0 * d0;
    let w = raw.len() - 1;
    let mut out = Vec::with_capacity(w + 1);
    for k in 0..=w {
        let mut acc = Poly::zero();
        let mut dp = Poly::one();
        for rr in 0..=k {
            let b = binom(&e, rr);
            if !b.is_zero() && !raw[k - rr].is_zero() {
                acc = &acc + &(&raw[k - rr] * &dp).scale_by(&b);
            }
            dp = &dp * &d2;
        }
        out.push((&acc * &mono).in_roster(&r));
    }
    (out, qe, te)
}

/// `h Jhr` through `h^order`, by the state-sum route.
pub fn u1rc_series(b: &BraidWord, order: usize) -> Result<U1RCSeries, Error> {
    let c = b.close();
    let alexander = alexander_conway(b)?;
    let r = Roster::t(c.components);
    let dx = d_of_x(b, &c);
    let d0 = dx.iter().fold(Poly::zero_in(&r), |a, p| &a + p).in_roster(&r);
    if d0.is_zero() {
        return Err(Error::VanishingAlexander);
    }
    let t = gen_t_polys(order)?;
    let s = statesum::state_sums(b, &c, &t, order);
    let raw = statesum::reconstruct(&s, &dx, b.strands(), order)?;
    let (nums, q_exp, t_exp) = apply_prefactor(&raw, &d0, &c);
    let orders = nums
        .into_iter()
        .enumerate()
        .map(|(n, num)| DenPowerFrac::new(d0.clone(), num, 2 * n as u32 + 1).normalize())
        .collect();
    Ok(U1RCSeries { components: c.components, d: d0, orders, q_exp, t_exp, linking: c.linking.clone(), alexander })
}

/// Expand a polynomial in `q` through `h^trunc`, with `q = 1 + h`.
fn q_series(p: &Poly, trunc: i32) -> RatSeries {
    if p.is_zero() {
        return HSeries::zero(trunc);
    }
    HSeries::from_q_poly(&p.in_roster(&Roster::q()), trunc)
}

/// `q^{lk(alpha)} Jhr(q^alpha)` as a Laurent series in `h`, exact through `h^order`.
/// Colors may be negative (the sign choices of the resummation).
pub fn substitute_colors(s: &U1RCSeries, alpha: &[i64], order: usize) -> Result<RatSeries, Error> {
    if alpha.len() != s.components {
        return Err(Error::ColorCountMismatch { given: alpha.len(), components: s.components });
    }
    if order > s.resummable_order() {
        return Err(Error::Invalid(format!("series computed to order {} cannot give h^{order}", s.order())));
    }
    let target = order as i32;
    let dq = s.d.subst_t_to_qpow(alpha);
    let max_pow = s.orders.iter().map(|f| f.pow).max().unwrap_or(0) as i32;
    let mut prec = target + 4;
    loop {
        let ds = q_series(&dq, prec);
        let v = match ds.valuation() {
            Some(v) => v,
            None => {
                if prec > target + 4 + 8 * (max_pow + 1) {
                    return Err(Error::DenominatorVanishesToOrder(prec));
                }
                prec *= 2;
                continue;
            }
        };
        let inv = ds.inverse()?;
        let mut acc = HSeries::zero(prec);
        let mut powers = vec![HSeries::constant(int(1), prec)];
        for (n, f) in s.orders.iter().enumerate() {
            while powers.len() <= f.pow as usize {
                let next = powers.last().unwrap() * &inv;
                powers.push(next);
            }
            let num = q_series(&f.num.subst_t_to_qpow(alpha), prec);
            let term = (&num * &powers[f.pow as usize]).shift(n as i32 - 1);
            acc = &acc + &term;
        }
        let lkq = HSeries::binomial(&s.lk(alpha), prec);
        let res = &acc * &lkq;
        if res.trunc() >= target {
            return Ok(res.truncate(target));
        }
        let _ = v;
        prec += target - res.trunc() + 2;
    }
}

/// Check the relation `Jhr(1/t) = (-1)^L Jhr(t)` order by order.
pub fn parity_check(s: &U1RCSeries) -> bool {
    let all: Vec<usize> = (0..s.components).collect();
    let sign = if s.components % 2 == 0 { int(1) } else { int(-1) };
    s.orders.iter().all(|f| {
        let ni = f.num.invert_vars(&all);
        let di = f.den.invert_vars(&all);
        &ni * &f.den.pow(f.pow) == (&f.num * &di.pow(f.pow)).scale_by(&sign)
    })
}

/// `h^0` coefficient of `h Jhr` times the Alexander-Conway function is exactly 1.
pub fn leading_unit_check(s: &U1RCSeries) -> bool {
    let f = &s.orders[0];
    let nd = s.alexander.nabla_times_diff();
    let diff = crate::burau::t_half_diff(&Roster::t(s.components), 0);
    // num / D^p * nabla = 1  <=>  num * (nabla * diff) = D^p * diff
    &f.num * &nd == &f.den.pow(f.pow) * &diff
}

/// Order-n denominator powers stay within `2n + 1` and numerator coefficients have
/// power-of-two denominators.
pub fn ring_check(s: &U1RCSeries) -> bool {
    s.orders.iter().enumerate().all(|(n, f)| {
        f.pow <= 2 * n as u32 + 1 && f.num.terms().all(|(_, c)| crate::algebra::rat::dyadic(c))
    })
}

