//! The determinant route: parametrized Burau matrices over jets in per-letter variables
//! `eps_{1..4,l}` and `mu`, with the T polynomials and C coefficients applied as a linear
//! functional on jet monomials. Exponential in the crossing count; used as a check.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use super::ctable::gen_c_table;
use super::tpoly::{gen_t_polys, TTable};
use super::{prefactor, U1RCSeries};
use crate::algebra::frac::DenPowerFrac;
use crate::algebra::jet::EpsJet;
use crate::algebra::matrix::Mat;
use crate::algebra::poly::Roster;
use crate::algebra::rat::{binom, factorial, int, Rat};
use crate::braid::{BraidWord, LinkClosure};
use crate::burau::alexander_conway;
use crate::{Error, Poly, PolyJet};

/// Product of the parametrized letter matrices; variable `4l + r` is `eps_{r+1, l}` and the
/// last variable is `mu`.
#[derive(Clone, Debug)]
pub struct ParamBurau {
    pub matrix: Mat<PolyJet>,
    pub weights: Arc<Vec<u32>>,
    pub cap: u32,
}

/// Letter matrices with `e^{eps}` expanded to the weighted degree cap; `eps` has weight 1
/// and `mu` weight 2.
pub fn build_param_burau(b: &BraidWord, c: &LinkClosure, cap: u32) -> ParamBurau {
    let nl = b.len();
    let mut w = vec![1u32; 4 * nl];
    w.push(2);
    let weights = Arc::new(w);
    let r = Roster::t(c.components);
    let n = b.strands();
    let one_p = Poly::constant(&r, int(1));
    let konst = |p: Poly| EpsJet::constant(&weights, cap, p);
    let zero = EpsJet::zero(&weights, cap);
    let ident = || Mat::from_fn(n, n, |i, j| if i == j { konst(one_p.clone()) } else { zero.clone() });
    let mut acc = ident();
    for (l, ((p, s), &(i1, i2))) in b.letters().zip(&c.crossing_components).enumerate() {
        let var = |k: usize| EpsJet::var(&weights, cap, 4 * l + k, one_p.clone());
        let e = |ks: &[usize]| {
            let sum = ks.iter().fold(zero.clone(), |a, &k| &a + &var(k));
            sum.exp().expect("no constant term")
        };
        let tv = |i: usize, x: i32| Poly::var_pow(&r, i, x, 1);
        let mut m = ident();
        if s > 0 {
            let a = &konst(&one_p - &tv(i2, -1)) + &var(3);
            m[(p, p)] = e(&[0, 2]).mul_jet(&a);
            m[(p, p + 1)] = e(&[1]).mul_jet(&konst(tv(i1, -1)));
            m[(p + 1, p)] = e(&[0]);
            m[(p + 1, p + 1)] = zero.clone();
        } else {
            let a = &konst(&one_p - &tv(i1, 1)) + &var(3);
            m[(p, p)] = zero.clone();
            m[(p, p + 1)] = e(&[1]);
            m[(p + 1, p)] = e(&[0]).mul_jet(&konst(tv(i2, 1)));
            m[(p + 1, p + 1)] = e(&[1, 2]).mul_jet(&konst(&tv(i1, -1) * &tv(i2, 1))).mul_jet(&a);
        }
        acc = m.matmul_with(&acc, zero.clone());
    }
    ParamBurau { matrix: acc, weights, cap }
}

/// Per-letter functional: jet exponents `(a, b, c, j)` of `eps_{1..4}` to `(h-order, value)`.
fn letter_functional(t: &TTable, sign: i32) -> HashMap<[u8; 4], Vec<(usize, Rat)>> {
    let mut f: HashMap<[u8; 4], Vec<(usize, Rat)>> = HashMap::new();
    let tab = if sign > 0 { &t.plus } else { &t.minus };
    for (&(j, k), poly) in tab {
        for (m, c) in poly.terms() {
            let key = [m[0] as u8, m[1] as u8, m[2] as u8, j as u8];
            let fac = key.iter().fold(int(1), |a, &e| a * Rat::from_integer(factorial(e as u32)));
            f.entry(key).or_default().push((j + k, c * &fac));
        }
    }
    f
}

fn hmul(a: &[Rat], b: &[(usize, Rat)], w: usize) -> Vec<Rat> {
    let mut r = vec![Rat::zero(); w + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b {
            if i + j <= w {
                r[i + j] += x * y;
            }
        }
    }
    r
}

/// `h Jhr` through `h^order` by the determinant route (`lambda` enters squared).
pub fn u1rc_series_jet(b: &BraidWord, order: usize) -> Result<U1RCSeries, Error> {
    let c = b.close();
    let alexander = alexander_conway(b)?;
    let l = c.components;
    let r = Roster::t(l);
    let cap = 2 * order as u32;
    let pb = build_param_burau(b, &c, cap);
    let ws = pb.weights.clone();
    let n = b.strands();
    let nv = ws.len();
    let one_p = Poly::constant(&r, int(1));
    let konst = |p: Poly| EpsJet::constant(&ws, cap, p);
    let lam = &konst(one_p.clone()) + &EpsJet::var(&ws, cap, nv - 1, one_p.clone());
    let lam2 = lam.mul_jet(&lam);
    let zero = EpsJet::zero(&ws, cap);
    let a = Mat::from_fn(n, n, |i, j| {
        let id = if i == j { konst(one_p.clone()) } else { zero.clone() };
        if i == 0 {
            id
        } else {
            &id - &lam2.mul_jet(&pb.matrix[(i, j)])
        }
    });
    let det = a.det_expansion_with(zero.clone(), konst(one_p.clone()));
    let d0 = det.constant_term().in_roster(&r);
    if d0.is_zero() {
        return Err(Error::VanishingAlexander);
    }
    let rest = -&det.without_constant();
    // 1/det = sum_k (-R)^k / D0^{k+1}, nilpotent under the cap
    let mut terms = vec![konst(one_p.clone())];
    loop {
        let next = terms.last().unwrap().mul_jet(&rest);
        if next.is_empty() {
            break;
        }
        terms.push(next);
    }
    let kk = terms.len() - 1;
    let mut d0p = vec![one_p.clone()];
    for _ in 0..=kk {
        d0p.push(d0p.last().unwrap() * &d0);
    }
    let mut num = zero.clone();
    for (k, t) in terms.iter().enumerate() {
        num = &num + &t.map(|p| p * &d0p[kk - k]);
    }
    let t = gen_t_polys(order)?;
    let ct = gen_c_table(order);
    let lf = [letter_functional(&t, 1), letter_functional(&t, -1)];
    let signs: Vec<i32> = b.letters().map(|(_, s)| s).collect();
    let mut res = vec![Poly::zero_in(&r); order + 1];
    for (m, v) in num.terms() {
        let mut hp = vec![Rat::zero(); order + 1];
        hp[0] = int(1);
        let mut ok = true;
        for (li, &s) in signs.iter().enumerate() {
            let key: [u8; 4] = [m[4 * li], m[4 * li + 1], m[4 * li + 2], m[4 * li + 3]];
            match lf[if s > 0 { 0 } else { 1 }].get(&key) {
                Some(f) => hp = hmul(&hp, f, order),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let nmu = m[nv - 1] as usize;
        let fac = Rat::from_integer(factorial(nmu as u32));
        let cser: Vec<(usize, Rat)> = (0..=order).map(|k| (k, ct.get(k, nmu) * &fac)).collect();
        let hp = hmul(&hp, &cser, order);
        for (k, x) in hp.iter().enumerate() {
            if !x.is_zero() {
                res[k] = &res[k] + &v.scale_by(x);
            }
        }
    }
    let (qe, te) = prefactor(&c);
    let mono = &Poly::monomial(&r, &te, int(1)) * &(&one_p - &Poly::var_pow(&r, 0, -1, 1));
    let e = &qe + &int(1);
    let orders = (0..=order)
        .map(|k| {
            let s = (0..=k).fold(Poly::zero_in(&r), |acc, rr| &acc + &res[k - rr].scale_by(&binom(&e, rr)));
            DenPowerFrac::new(d0.clone(), (&s * &mono).in_roster(&r), kk as u32 + 1).normalize()
        })
        .collect();
    Ok(U1RCSeries { components: l, d: d0, orders, q_exp: qe, t_exp: te, linking: c.linking.clone(), alexander })
}

