//! Trace of the Verma-module transfer matrix over states with the first slot empty,
//! summed by total occupation; the generating function in `x = q^{-1}` is rational with
//! denominator `det(1 - x Q B)^{2w+1}` at order `h^w`.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::tpoly::{letter_weights, TTable};
use crate::algebra::poly::Roster;
use crate::algebra::rat::{binom, int};
use crate::braid::{BraidWord, LinkClosure};
use crate::{Error, Poly};

type Series = Vec<Poly>;
type Element = Vec<((u32, u32), Series)>;

fn smul(a: &Series, b: &Series, w: usize) -> Series {
    let mut r: Series = vec![Poly::zero(); w + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(w + 1 - i) {
            if !y.is_zero() {
                r[i + j] = &r[i + j] + &(x * y);
            }
        }
    }
    r
}

fn sadd(a: &mut Series, b: &Series) {
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x = &*x + y;
        }
    }
}

struct Letters<'a> {
    t: &'a TTable,
    roster: Roster,
    w: usize,
    cache: Mutex<HashMap<(i32, usize, usize, u32, u32), std::sync::Arc<Element>>>,
}

impl Letters<'_> {
    fn tv(&self, i: usize, e: i64) -> Poly {
        Poly::var_pow(&self.roster, i, e as i32, 1)
    }

    fn element(&self, sign: i32, i1: usize, i2: usize, m1: u32, m2: u32) -> std::sync::Arc<Element> {
        let key = (sign, i1, i2, m1, m2);
        if let Some(e) = self.cache.lock().unwrap().get(&key) {
            return e.clone();
        }
        let one = Poly::constant(&self.roster, int(1));
        let (a, top) = if sign > 0 { (&one - &self.tv(i2, -1), m1) } else { (&one - &self.tv(i1, 1), m2) };
        let mut apow = vec![one.clone()];
        for _ in 0..top {
            apow.push(apow.last().unwrap() * &a);
        }
        let (m1i, m2i) = (m1 as i64, m2 as i64);
        let mut out = Vec::new();
        for n in 0..=top as i64 {
            let (state, mono) = if sign > 0 {
                ((m2 + n as u32, m1 - n as u32), self.tv(i1, -m2i))
            } else {
                ((m2 - n as u32, m1 + n as u32), &self.tv(i2, m1i + n) * &self.tv(i1, -n))
            };
            let pref = mono.scale_by(&binom(&int(top as i64), n as usize));
            let mut ser: Series = vec![Poly::zero(); self.w + 1];
            for (hk, ap, v) in letter_weights(self.t, sign, m1i, m2i, n, self.w) {
                ser[hk] = &ser[hk] + &apow[ap].scale_by(&v);
            }
            let ser: Series = ser.iter().map(|s| if s.is_zero() { s.clone() } else { s * &pref }).collect();
            out.push((state, ser));
        }
        let e = std::sync::Arc::new(out);
        self.cache.lock().unwrap().insert(key, e.clone());
        e
    }
}

/// Largest total occupation summed: enough to recover every numerator and check the
/// coefficients above its degree.
pub fn kmax(strands: usize, w: usize) -> usize {
    2 * w * (strands - 1) + 2
}

/// `S[k][w]`: coefficient of `h^w` in the trace over states with `m_1 = 0` and `sum m = k`.
pub fn state_sums(b: &BraidWord, c: &LinkClosure, t: &TTable, w: usize) -> Vec<Series> {
    let n = b.strands();
    let roster = Roster::t(c.components);
    let letters = Letters { t, roster: roster.clone(), w, cache: Mutex::new(HashMap::new()) };
    let km = kmax(n, w);
    let plan: Vec<(usize, i32, (usize, usize))> =
        b.letters().zip(&c.crossing_components).map(|((p, s), &cc)| (p, s, cc)).collect();
    let mut starts: Vec<(usize, Vec<u32>)> = Vec::new();
    for k in 0..=km {
        for st in compositions(k as u32, n - 1) {
            let mut s = vec![0u32];
            s.extend(st);
            starts.push((k, s));
        }
    }
    let unit: Series = {
        let mut v = vec![Poly::zero(); w + 1];
        v[0] = Poly::constant(&roster, int(1));
        v
    };
    let diag: Vec<(usize, Series)> = starts
        .par_iter()
        .map(|(k, st)| {
            let mut vec: HashMap<Vec<u32>, Series> = HashMap::new();
            vec.insert(st.clone(), unit.clone());
            for &(p, s, (i1, i2)) in &plan {
                let mut nv: HashMap<Vec<u32>, Series> = HashMap::new();
                for (s0, ser) in &vec {
                    let el = letters.element(s, i1, i2, s0[p], s0[p + 1]);
                    for ((o1, o2), e) in el.iter() {
                        let mut ns = s0.clone();
                        ns[p] = *o1;
                        ns[p + 1] = *o2;
                        let prod = smul(ser, e, w);
                        match nv.get_mut(&ns) {
                            Some(x) => sadd(x, &prod),
                            None => {
                                nv.insert(ns, prod);
                            }
                        }
                    }
                }
                nv.retain(|_, s| s.iter().any(|x| !x.is_zero()));
                vec = nv;
            }
            (*k, vec.remove(st).unwrap_or_else(|| vec![Poly::zero(); w + 1]))
        })
        .collect();
    let mut out: Vec<Series> = vec![vec![Poly::zero(); w + 1]; km + 1];
    for (k, s) in diag {
        sadd(&mut out[k], &s);
    }
    out
}

/// All vectors of `parts` nonnegative integers summing to `k`.
fn compositions(k: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=k {
        for mut rest in compositions(k - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn xmul(a: &[Poly], b: &[Poly], maxdeg: usize) -> Vec<Poly> {
    let mut r = vec![Poly::zero(); maxdeg + 1];
    for (i, x) in a.iter().enumerate().take(maxdeg + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(maxdeg + 1 - i) {
            if !y.is_zero() {
                r[i + j] = &r[i + j] + &(x * y);
            }
        }
    }
    r
}

fn xpow(a: &[Poly], n: usize, maxdeg: usize) -> Vec<Poly> {
    let mut r = vec![Poly::one()];
    for _ in 0..n {
        r = xmul(&r, a, maxdeg);
    }
    r
}

/// Taylor coefficients at `x = 1` through order `m`.
fn shift_to_one(p: &[Poly], m: usize) -> Vec<Poly> {
    (0..=m)
        .map(|i| {
            p.iter().enumerate().filter(|(e, c)| *e >= i && !c.is_zero()).fold(Poly::zero(), |acc, (e, c)| {
                &acc + &c.scale_by(&binom(&int(e as i64), i))
            })
        })
        .collect()
}

/// Numerators `N_K` with `sum_w h^w P_w(q^{-1}) / D(q^{-1})^{2w+1} = sum_K h^K N_K / D0^{2K+1}`.
///
/// `s` are the state sums, `dx` the coefficients of `D(x) = det(1 - x Q B)`.
pub fn reconstruct(s: &[Series], dx: &[Poly], strands: usize, w_max: usize) -> Result<Vec<Poly>, Error> {
    let km = s.len() - 1;
    let d0 = dx.iter().fold(Poly::zero(), |a, c| &a + c);
    let mut d0p = vec![Poly::one()];
    for _ in 0..=2 * w_max + 1 {
        d0p.push(d0p.last().unwrap() * &d0);
    }
    let d_shift = shift_to_one(dx, w_max);
    let mut out = vec![Poly::zero(); w_max + 1];
    for w in 0..=w_max {
        let c = 2 * w + 1;
        let g: Vec<Poly> = s.iter().map(|row| row[w].clone()).collect();
        let p = xmul(&xpow(dx, c, km), &g, km);
        let dmax = 2 * w * (strands - 1);
        if let Some(e) = (dmax + 1..=km).find(|&e| !p[e].is_zero()) {
            return Err(Error::InterpolationInconsistent(format!(
                "order {w}: numerator has a term x^{e} above degree {dmax}"
            )));
        }
        let m_top = w_max - w;
        let ps = shift_to_one(&p[..=dmax.min(km)], m_top);
        // (1 + R)^{-c} with R = (D(1+z) - D0) / D0: z^n coefficient over D0^n
        let mut rt: Vec<Poly> = d_shift.clone();
        rt[0] = Poly::zero();
        let mut a = vec![Poly::zero(); m_top + 1];
        let mut rk = vec![Poly::one()];
        for k in 0..=m_top {
            let bc = binom(&int(-(c as i64)), k);
            for n in k..=m_top {
                if let Some(x) = rk.get(n) {
                    if !x.is_zero() {
                        a[n] = &a[n] + &(x * &d0p[n - k]).scale_by(&bc);
                    }
                }
            }
            rk = xmul(&rk, &rt, m_top);
        }
        // F_n over D0^{c+n}
        let f: Vec<Poly> = (0..=m_top)
            .map(|n| (0..=n).fold(Poly::zero(), |acc, i| &acc + &(&(&ps[i] * &a[n - i]) * &d0p[i])))
            .collect();
        // z = -y / (1 + y), then y = h
        for m in 0..=m_top {
            let mut num = Poly::zero();
            for (n, fnn) in f.iter().enumerate().take(m + 1) {
                let mut cf = binom(&int(-(n as i64)), m - n);
                if n % 2 == 1 {
                    cf = -cf;
                }
                if !cf.is_zero() && !fnn.is_zero() {
                    num = &num + &(fnn * &d0p[m - n]).scale_by(&cf);
                }
            }
            let k = w + m;
            out[k] = &out[k] + &(&num * &d0p[m]);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(3, 2).len(), 4);
        assert_eq!(compositions(0, 0), vec![Vec::<u32>::new()]);
        assert!(compositions(2, 0).is_empty());
    }
}
