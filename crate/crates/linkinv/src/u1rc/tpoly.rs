use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::interp::{degree_in, eval_at, interpolate, plain_roster, total_degree};
use crate::algebra::poly::Roster;
use crate::algebra::rat::{binom, int, Rat};
use crate::{Error, Poly};

/// Roster `m1, m2, n` of the T polynomials.
pub fn t_roster() -> Roster {
    plain_roster(&["m1", "m2", "n"])
}

/// `T^{(±)}_{j,k}` for `j + k <= order`.
#[derive(Clone, Debug, PartialEq)]
pub struct TTable {
    pub order: usize,
    pub plus: BTreeMap<(usize, usize), Poly>,
    pub minus: BTreeMap<(usize, usize), Poly>,
}

impl TTable {
    pub fn get(&self, sign: i32, j: usize, k: usize) -> &Poly {
        if sign > 0 {
            &self.plus[&(j, k)]
        } else {
            &self.minus[&(j, k)]
        }
    }
}

/// Series in `h` whose coefficients are polynomials in the marker `u`, as `[h][u]`.
type Ser2 = Vec<Vec<Rat>>;

fn ser_h(c: Vec<Rat>, w: usize) -> Ser2 {
    c.into_iter().map(|x| {
        let mut v = vec![Rat::zero(); w + 1];
        v[0] = x;
        v
    }).collect()
}

fn mul_h(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len();
    let mut r = vec![Rat::zero(); n];
    for i in 0..n {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..n - i {
            r[i + j] += &a[i] * &b[j];
        }
    }
    r
}

fn inv_h(a: &[Rat]) -> Vec<Rat> {
    let n = a.len();
    let b0 = a[0].recip();
    let mut b = vec![b0.clone()];
    for k in 1..n {
        let mut s = Rat::zero();
        for i in 1..=k {
            s += &a[i] * &b[k - i];
        }
        b.push(-(&b0 * s));
    }
    b
}

/// `(1+h)^e` through `h^w`.
fn pow1h(e: i64, w: usize) -> Vec<Rat> {
    (0..=w).map(|k| binom(&int(e), k)).collect()
}

/// `((1+h)^x - 1) / (x h)`, a polynomial in `x` at each order.
fn f_ser(x: i64, w: usize) -> Vec<Rat> {
    let mut out = Vec::with_capacity(w + 1);
    let mut c = int(1);
    for i in 0..=w {
        if i > 0 {
            c = c * int(x - i as i64) / int(i as i64 + 1);
        }
        out.push(c.clone());
    }
    out
}

/// `e * s` where `s` carries no `u`.
fn mul_by_h(e: &Ser2, s: &[Rat]) -> Ser2 {
    let w = e.len() - 1;
    let mut r = vec![vec![Rat::zero(); e[0].len()]; w + 1];
    for i in 0..=w {
        for j in 0..=w - i {
            if s[j].is_zero() {
                continue;
            }
            for (uu, x) in e[i].iter().enumerate() {
                if !x.is_zero() {
                    r[i + j][uu] += x * &s[j];
                }
            }
        }
    }
    r
}

/// `e * (1 + u (g - 1))` with `g` a series in `h`.
fn mul_by_marker(e: &Ser2, g: &[Rat]) -> Ser2 {
    let mut gm = g.to_vec();
    gm[0] -= int(1);
    let shifted = mul_by_h(e, &gm);
    let nu = e[0].len();
    let mut r = e.clone();
    for (i, row) in shifted.iter().enumerate() {
        for uu in 0..nu - 1 {
            if !row[uu].is_zero() {
                r[i][uu + 1] += &row[uu];
            }
        }
    }
    r
}

/// `prod_{l=1}^n (1 + u (g_l - 1))` with `g_l = (1+h)^{-m - l}` for (+) and
/// `(1+h)^{m + l}` for (-); `m` is `m2` for (+) and `m1` for (-).
fn marker_product(sign: i32, m: i64, n: i64, w: usize) -> Ser2 {
    let mut e = ser_h(pow1h(0, w), w);
    for l in 1..=n {
        let g = if sign > 0 { pow1h(-m - l, w) } else { pow1h(m + l, w) };
        e = mul_by_marker(&e, &g);
    }
    e
}

/// Products of `f_ser(i)` over integer ranges, from prefix products and their inverses.
struct RangeProducts {
    base: i64,
    prefix: Vec<Vec<Rat>>,
    prefix_inv: Vec<Vec<Rat>>,
}

impl RangeProducts {
    /// Covers every range inside `[lo, hi]`.
    fn new(lo: i64, hi: i64, w: usize) -> Self {
        let mut prefix = vec![pow1h(0, w)];
        for i in lo..=hi {
            let next = mul_h(prefix.last().unwrap(), &f_ser(i, w));
            prefix.push(next);
        }
        let prefix_inv = prefix.iter().map(|p| inv_h(p)).collect();
        RangeProducts { base: lo, prefix, prefix_inv }
    }

    /// `prod_{i=lo}^{hi} f_ser(i)`, empty when `hi < lo`.
    fn range(&self, lo: i64, hi: i64) -> Vec<Rat> {
        if hi < lo {
            return self.prefix[0].clone();
        }
        let a = (hi - self.base + 1) as usize;
        let b = (lo - self.base) as usize;
        mul_h(&self.prefix[a], &self.prefix_inv[b])
    }
}

/// The `u`-free part of `X^{(±)}`.
fn plain_part(f: &RangeProducts, sign: i32, m1: i64, m2: i64, n: i64, w: usize) -> Vec<Rat> {
    let tri = n * (n + 1) / 2;
    if sign > 0 {
        let e = pow1h((m1 + 1) * m2 + tri, w);
        let num = f.range(m1 - n + 1, m1);
        mul_h(&mul_h(&e, &num), &inv_h(&f.range(1, n)))
    } else {
        let e = pow1h(-m1 * (m2 + 1) - tri, w);
        let num = f.range(-m2, n - m2 - 1);
        mul_h(&mul_h(&e, &num), &inv_h(&f.range(-n, -1)))
    }
}

fn range_products(m_max: i64, n_max: i64, w: usize) -> RangeProducts {
    RangeProducts::new(-n_max - m_max, n_max + m_max, w)
}

/// `X^{(±)}(m1, m2, n)` through `h^w` and `u^w`.
pub fn x_series(sign: i32, m1: i64, m2: i64, n: i64, w: usize) -> Vec<Vec<Rat>> {
    let m = if sign > 0 { m2 } else { m1 };
    let f = range_products(m1.max(m2), n, w);
    mul_by_h(&marker_product(sign, m, n, w), &plain_part(&f, sign, m1, m2, n, w))
}

fn falling(n: i64, j: usize) -> Rat {
    (0..j as i64).fold(int(1), |a, l| a * int(n - l))
}

fn gen_sign(sign: i32, order: usize) -> Result<BTreeMap<(usize, usize), Poly>, Error> {
    let w = order;
    let wi = w as i64;
    let pts: Vec<(i64, i64, i64)> = (0..=wi + 1)
        .flat_map(|a| (0..=wi + 1).flat_map(move |b| (wi..=3 * wi + 1).map(move |c| (a, b, c))))
        .collect();
    // the marker product depends on one of m1, m2 only
    let markers: HashMap<(i64, i64), Ser2> = (0..=wi + 1)
        .flat_map(|m| (wi..=3 * wi + 1).map(move |c| (m, c)))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&(m, c)| ((m, c), marker_product(sign, m, c, w)))
        .collect();
    let f = range_products(wi + 1, 3 * wi + 1, w);
    let cache: HashMap<(i64, i64, i64), Ser2> = pts
        .par_iter()
        .map(|&(a, b, c)| {
            let m = if sign > 0 { b } else { a };
            ((a, b, c), mul_by_h(&markers[&(m, c)], &plain_part(&f, sign, a, b, c, w)))
        })
        .collect();
    let r = t_roster();
    let mut out = BTreeMap::new();
    for j in 0..=w {
        for k in 0..=w - j {
            // (+): deg m1 <= k, deg m2 <= j + k; (-) swaps m1 and m2
            let (d1, d2) = if sign > 0 { (k, j + k) } else { (j + k, k) };
            let dn = j + 2 * k;
            let axes = vec![
                (0..=d1 as i64).collect::<Vec<_>>(),
                (0..=d2 as i64).collect(),
                (wi..=wi + dn as i64).collect(),
            ];
            let val = |p: &[i64]| cache[&(p[0], p[1], p[2])][j + k][j].clone() / falling(p[2], j);
            let mut f = |p: &[i64]| val(p);
            let poly = interpolate(&r, &axes, &mut f);
            let held = [d1 as i64 + 1, d2 as i64 + 1, wi + dn as i64 + 1];
            let want = val(&held);
            if eval_at(&poly, &held.map(int)) != want {
                return Err(Error::InterpolationInconsistent(format!("T({sign})_{{{j},{k}}}")));
            }
            let (i1, i2) = if sign > 0 { (0, 1) } else { (1, 0) };
            if total_degree(&poly) > dn as i32 || degree_in(&poly, i1) > k as i32 || degree_in(&poly, i2) > (j + k) as i32 {
                return Err(Error::DegreeBoundViolated(format!("T({sign})_{{{j},{k}}}")));
            }
            out.insert((j, k), poly);
        }
    }
    Ok(out)
}

fn generate(order: usize) -> Result<TTable, Error> {
    let (plus, minus) = rayon::join(|| gen_sign(1, order), || gen_sign(-1, order));
    let t = TTable { order, plus: plus?, minus: minus? };
    let one = Poly::constant(&t_roster(), int(1));
    assert!(t.plus[&(0, 0)] == one && t.minus[&(0, 0)] == one);
    Ok(t)
}

static CACHE: OnceLock<Mutex<Option<Arc<TTable>>>> = OnceLock::new();

/// T polynomials for `j + k <= order`, generated by exact evaluation on an integer grid and
/// interpolation, with a held-out point and the degree bounds checked. Results are cached
/// for the process.
pub fn gen_t_polys(order: usize) -> Result<Arc<TTable>, Error> {
    let m = CACHE.get_or_init(|| Mutex::new(None));
    let mut g = m.lock().unwrap();
    if let Some(t) = g.as_ref() {
        if t.order >= order {
            return Ok(t.clone());
        }
    }
    let t = Arc::new(generate(order)?);
    *g = Some(t.clone());
    Ok(t)
}

/// `sum_{j,k} h^{j+k} [n]_j a^{n-j} T_{jk}(m1, m2, n)` coefficients as rationals per
/// `(h-order, power of a)`.
pub fn letter_weights(t: &TTable, sign: i32, m1: i64, m2: i64, n: i64, w: usize) -> Vec<(usize, usize, Rat)> {
    let pt = [int(m1), int(m2), int(n)];
    let mut out = Vec::new();
    for j in 0..=w.min(n as usize) {
        let ff = falling(n, j);
        for k in 0..=w - j {
            let v = eval_at(t.get(sign, j, k), &pt) * &ff;
            if !v.is_zero() {
                out.push((j + k, n as usize - j, v));
            }
        }
    }
    out
}
