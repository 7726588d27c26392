//! The sl2 R-matrix on colored modules, the colored Jones polynomial as a quantum trace,
//! Melvin-Morton coefficients and the root-of-unity symmetry check.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::interp::{degree_in, eval_at, interpolate};
use crate::algebra::numeric::{bits_for_digits, cabs, eval_complex, Fixed};
use crate::algebra::poly::{Roster, Var};
use crate::algebra::rat::{int, Rat};
use crate::algebra::series::HSeries;
use crate::braid::BraidWord;
use crate::{Error, Poly};

/// Largest tensor-product dimension the trace will enumerate.
pub const MAX_STATES: usize = 100_000;

fn q_mono(e4: i64) -> Poly {
    Poly::monomial(&Roster::q(), &[e4 as i32], int(1))
}

/// Quantum integer `[x]`.
pub fn qint(x: i64) -> Poly {
    if x < 0 {
        return -qint(-x);
    }
    let mut p = Poly::zero_in(&Roster::q());
    for k in 0..x {
        p = &p + &q_mono(2 * (x - 1 - 2 * k));
    }
    p
}

pub fn qfact(x: i64) -> Poly {
    (1..=x).fold(Poly::constant(&Roster::q(), int(1)), |a, i| &a * &qint(i))
}

/// `[a]! / [a-n]!`.
fn qfalling(a: i64, n: i64) -> Poly {
    (a - n + 1..=a).fold(Poly::constant(&Roster::q(), int(1)), |acc, i| &acc * &qint(i))
}

fn qbinom(m: i64, n: i64) -> Poly {
    qfalling(m, n).div_exact(&qfact(n)).expect("q-binomial is a Laurent polynomial")
}

/// Coefficient of `f_{m2+n} (x) f_{m1-n}` in `R-check (f_{m1} (x) f_{m2})` on `V_{g1} (x) V_{g2}`.
pub fn r_coeff(g1: i64, g2: i64, m1: i64, m2: i64, n: i64) -> Poly {
    if n < 0 || n > m1 || m2 + n > g2 - 1 {
        return Poly::zero_in(&Roster::q());
    }
    let diff = &q_mono(2) - &q_mono(-2);
    let e4 = (g1 - 2 * m1 - 1) * (g2 - 2 * m2 - 1) - n * (g1 - g2 - 2 * m1 + 2 * m2 + n + 1);
    &(&(&diff.pow(n as u32) * &qfalling(g2 - m2 - 1, n)) * &qbinom(m1, n)) * &q_mono(e4)
}

/// Sparse block of `R-check^{±1}`: `V_{g1} (x) V_{g2} -> V_{g2} (x) V_{g1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct RBlock {
    pub g1: usize,
    pub g2: usize,
    pub sign: i32,
    pub entries: BTreeMap<(usize, usize), Vec<((usize, usize), Poly)>>,
}

impl RBlock {
    pub fn apply(&self, a: usize, b: usize) -> &[((usize, usize), Poly)] {
        self.entries.get(&(a, b)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Composition `o . self`.
    pub fn then(&self, o: &RBlock) -> BTreeMap<(usize, usize), BTreeMap<(usize, usize), Poly>> {
        let mut out = BTreeMap::new();
        for (&inp, outs) in &self.entries {
            let row: &mut BTreeMap<(usize, usize), Poly> = out.entry(inp).or_default();
            for (mid, c) in outs {
                for (fin, d) in o.apply(mid.0, mid.1) {
                    let e = row.entry(*fin).or_insert_with(Poly::zero);
                    *e = &*e + &(c * d);
                }
            }
            row.retain(|_, v| !v.is_zero());
        }
        out
    }
}

fn positive_block(g1: usize, g2: usize) -> RBlock {
    let mut entries = BTreeMap::new();
    for m1 in 0..g1 {
        for m2 in 0..g2 {
            let mut v = Vec::new();
            for n in 0..=m1 {
                let c = r_coeff(g1 as i64, g2 as i64, m1 as i64, m2 as i64, n as i64);
                if !c.is_zero() {
                    v.push(((m2 + n, m1 - n), c));
                }
            }
            entries.insert((m1, m2), v);
        }
    }
    RBlock { g1, g2, sign: 1, entries }
}

/// `R-check` for `sign = 1`; for `sign = -1` the exact inverse of `R-check` on
/// `V_{g2} (x) V_{g1}`, so that both map `V_{g1} (x) V_{g2}` to `V_{g2} (x) V_{g1}`.
pub fn r_block(g1: usize, g2: usize, sign: i32) -> RBlock {
    assert!(g1 >= 1 && g2 >= 1);
    if sign > 0 {
        return positive_block(g1, g2);
    }
    // M = R-check(g2, g1) sends (a, s-a) to (s-o, o) with o <= a; triangular with
    // monomial diagonal in each weight sector s.
    let m = positive_block(g2, g1);
    let mut entries: BTreeMap<(usize, usize), Vec<((usize, usize), Poly)>> = BTreeMap::new();
    for s in 0..(g1 + g2 - 1) {
        let lo = s.saturating_sub(g1 - 1);
        let hi = (g2 - 1).min(s);
        if lo > hi {
            continue;
        }
        let idx: Vec<usize> = (lo..=hi).collect();
        let k = idx.len();
        // mat[o][a] with o, a offsets
        let mut mat = vec![vec![Poly::zero(); k]; k];
        for (ai, &a) in idx.iter().enumerate() {
            for ((o1, o2), c) in m.apply(a, s - a) {
                debug_assert_eq!(o1 + o2, s);
                mat[o2 - lo][ai] = c.clone();
            }
        }
        // solve mat * x = e_j by back substitution (mat[r][c] != 0 only for r <= c)
        for j in 0..k {
            let mut x = vec![Poly::zero(); k];
            for c in (0..k).rev() {
                let mut rhs = if c == j { Poly::one() } else { Poly::zero() };
                for c2 in c + 1..k {
                    if !mat[c][c2].is_zero() && !x[c2].is_zero() {
                        rhs = &rhs - &(&mat[c][c2] * &x[c2]);
                    }
                }
                let d = mat[c][c].try_inv().expect("monomial diagonal");
                x[c] = &rhs * &d;
            }
            // input of the inverse is (s - o, o) in V_{g1} (x) V_{g2}, o = idx[j]
            let o = idx[j];
            let v: Vec<_> = (0..k)
                .filter(|&c| !x[c].is_zero())
                .map(|c| ((idx[c], s - idx[c]), x[c].in_roster(&Roster::q())))
                .collect();
            entries.insert((s - o, o), v);
        }
    }
    for a in 0..g1 {
        for b in 0..g2 {
            entries.entry((a, b)).or_default();
        }
    }
    RBlock { g1, g2, sign: -1, entries }
}

/// Framing exponent `phi_sl = (1/4) sum_j l_jj (alpha_j^2 - 1)` in quarter units.
fn framing4(b: &BraidWord, colors: &[i64]) -> i64 {
    let c = b.close();
    (0..c.components).map(|j| c.lk(j, j) * (colors[j] * colors[j] - 1)).sum()
}

fn check_colors(l: usize, colors: &[i64]) -> Result<(), Error> {
    if colors.len() != l {
        return Err(Error::ColorCountMismatch { given: colors.len(), components: l });
    }
    if colors.iter().any(|&a| a < 1) {
        return Err(Error::NonPositiveColor);
    }
    Ok(())
}

/// Colored Jones polynomial `q^{-phi_sl} Tr(q^{H/2} B)` with colors per component.
pub fn colored_jones(b: &BraidWord, colors: &[i64]) -> Result<Poly, Error> {
    let c = b.close();
    check_colors(c.components, colors)?;
    let n = b.strands();
    let gam: Vec<usize> = (0..n).map(|i| colors[c.component_of_strand[i]] as usize).collect();
    let dim = gam.iter().try_fold(1usize, |a, &g| a.checked_mul(g)).unwrap_or(usize::MAX);
    if dim > MAX_STATES {
        return Err(Error::SizeLimit(dim));
    }
    // slot colors before each letter, and the block it needs
    let mut cur = gam.clone();
    let mut cache: HashMap<(usize, usize, i32), RBlock> = HashMap::new();
    let mut plan = Vec::with_capacity(b.len());
    for (p, s) in b.letters() {
        let key = (cur[p], cur[p + 1], s);
        cache.entry(key).or_insert_with(|| r_block(key.0, key.1, s));
        plan.push((p, key));
        cur.swap(p, p + 1);
    }
    let starts: Vec<Vec<u8>> = product(&gam);
    let q = Roster::q();
    let trace: Poly = starts
        .par_iter()
        .map(|st| {
            let mut vec: BTreeMap<Vec<u8>, Poly> = BTreeMap::new();
            vec.insert(st.clone(), Poly::constant(&q, int(1)));
            for (p, key) in &plan {
                let blk = &cache[key];
                let mut nv: BTreeMap<Vec<u8>, Poly> = BTreeMap::new();
                for (s0, v) in &vec {
                    for ((o1, o2), cf) in blk.apply(s0[*p] as usize, s0[*p + 1] as usize) {
                        let mut ns = s0.clone();
                        ns[*p] = *o1 as u8;
                        ns[*p + 1] = *o2 as u8;
                        let e = nv.entry(ns).or_insert_with(|| Poly::zero_in(&q));
                        *e = &*e + &(v * cf);
                    }
                }
                nv.retain(|_, v| !v.is_zero());
                vec = nv;
            }
            match vec.get(st) {
                Some(v) => {
                    let w: i64 = st.iter().zip(&gam).map(|(&m, &g)| g as i64 - 2 * m as i64 - 1).sum();
                    v * &q_mono(2 * w)
                }
                None => Poly::zero_in(&q),
            }
        })
        .reduce(|| Poly::zero_in(&q), |a, b| &a + &b);
    Ok((&trace * &q_mono(-framing4(b, colors))).in_roster(&q))
}

fn product(gam: &[usize]) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for &g in gam {
        let mut next = Vec::with_capacity(out.len() * g);
        for s in &out {
            for m in 0..g {
                let mut t = s.clone();
                t.push(m as u8);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// Roster `a1..aL` for polynomials in the colors.
pub fn color_roster(l: usize) -> Roster {
    Roster::new((1..=l).map(|i| Var { name: format!("a{i}"), scale: 1 }).collect())
}

/// Coefficients of `h^n`, `n <= n_max`, of the colored Jones polynomial as exact polynomials
/// in the colors. Sampled on `{1, ..., 2 n_max + 2}` per component and checked at
/// `2 n_max + 3`; the degree in each color is at most `2n + 1`.
pub fn melvin_morton_coeffs(b: &BraidWord, n_max: usize) -> Result<Vec<Poly>, Error> {
    let l = b.close().components;
    let top = 2 * n_max as i64 + 2;
    let axis: Vec<i64> = (1..=top).collect();
    let axes = vec![axis; l];
    let mut grid = vec![Vec::new()];
    for _ in 0..l {
        grid = grid.into_iter().flat_map(|g: Vec<i64>| (1..=top).map(move |a| [g.clone(), vec![a]].concat())).collect();
    }
    let series = |cols: &[i64]| -> Result<HSeries<Rat>, Error> {
        Ok(HSeries::from_q_poly(&colored_jones(b, cols)?, n_max as i32))
    };
    let table: Vec<(Vec<i64>, HSeries<Rat>)> =
        grid.par_iter().map(|g| series(g).map(|s| (g.clone(), s))).collect::<Result<_, _>>()?;
    let table: HashMap<Vec<i64>, HSeries<Rat>> = table.into_iter().collect();
    let r = color_roster(l);
    let held = vec![top + 1; l];
    let held_series = series(&held)?;
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut f = |pt: &[i64]| table[pt].get(n as i32).unwrap();
        let p = interpolate(&r, &axes, &mut f);
        let want = held_series.get(n as i32).unwrap();
        let got = eval_at(&p, &held.iter().map(|&a| int(a)).collect::<Vec<_>>());
        if got != want {
            return Err(Error::InterpolationInconsistent(format!("h^{n}: {got} vs {want}")));
        }
        if (0..l).any(|i| degree_in(&p, i) > 2 * n as i32 + 1) {
            return Err(Error::DegreeBoundViolated(format!("h^{n} coefficient above degree {} in a color", 2 * n + 1)));
        }
        out.push(p);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryReport {
    pub sign: i32,
    pub lhs: (f64, f64),
    pub rhs: (f64, f64),
    pub residual: f64,
    pub pass: bool,
}

/// Compare `J(alpha')` with `(-1)^{sum_{k != j} l_jk (alpha_k - 1)} J(alpha)` at
/// `q = exp(2 pi i / K)`, where `alpha'` replaces `alpha_j` by `K - alpha_j`.
pub fn symmetry_principle_check(
    b: &BraidWord,
    colors: &[i64],
    j: usize,
    k: i64,
    digits: u32,
) -> Result<SymmetryReport, Error> {
    let c = b.close();
    check_colors(c.components, colors)?;
    if k < 3 || j >= c.components || colors.iter().any(|&a| a >= k) {
        return Err(Error::Invalid(format!("need K >= 3, colors below K and a valid component (K = {k})")));
    }
    let mut flipped = colors.to_vec();
    flipped[j] = k - colors[j];
    let e: i64 = (0..c.components).filter(|&i| i != j).map(|i| c.lk(j, i) * (colors[i] - 1)).sum();
    let sign = if e.rem_euclid(2) == 0 { 1 } else { -1 };
    let bits = bits_for_digits(digits);
    let z = Fixed::unit_root(1, 2 * k, bits);
    let at = |p: &Poly| eval_complex(p, &[("q", z.clone())], bits);
    let lhs = at(&colored_jones(b, &flipped)?)?;
    let mut rhs = at(&colored_jones(b, colors)?)?;
    if sign < 0 {
        rhs = -rhs;
    }
    let residual = cabs(&(lhs.clone() - rhs.clone()));
    Ok(SymmetryReport {
        sign,
        lhs: (lhs.re.to_f64(), lhs.im.to_f64()),
        rhs: (rhs.re.to_f64(), rhs.im.to_f64()),
        residual,
        pass: residual < 1e-9,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn br(s: &str) -> BraidWord {
        BraidWord::parse(s).unwrap()
    }

    #[test]
    fn quantum_integers() {
        assert_eq!(qint(1), Poly::one());
        assert_eq!(qint(-3), -qint(3));
        assert_eq!(qint(2), &q_mono(2) + &q_mono(-2));
    }

    #[test]
    fn blocks() {
        let b = r_block(1, 1, 1);
        assert_eq!(b.apply(0, 0), &[((0, 0), Poly::one())]);
        for (g1, g2) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
            let p = r_block(g1, g2, 1);
            let m = r_block(g2, g1, -1);
            for ((a, bb), row) in p.then(&m) {
                assert_eq!(row.len(), 1);
                assert_eq!(row[&(a, bb)], Poly::one());
            }
        }
    }

    #[test]
    fn trivial_values() {
        assert_eq!(colored_jones(&br("1:"), &[3]).unwrap(), qint(3));
        assert_eq!(colored_jones(&br("3: 1 -2 1 -2"), &[1]).unwrap(), Poly::one());
        assert!(matches!(colored_jones(&br("2: 1 1"), &[2]), Err(Error::ColorCountMismatch { .. })));
        assert!(matches!(colored_jones(&br("1:"), &[0]), Err(Error::NonPositiveColor)));
    }

    #[test]
    fn unknot_mm() {
        let p = melvin_morton_coeffs(&br("1:"), 1).unwrap();
        assert_eq!(p[0], Poly::var(&color_roster(1), 0));
    }
}
