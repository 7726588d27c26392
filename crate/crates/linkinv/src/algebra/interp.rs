use num_traits::Zero;

use super::poly::{Poly, Roster};
use super::rat::{int, Rat};

/// Polynomial through the values of `f` on the tensor grid `axes` (Newton form per axis).
/// Variable `d` of `roster` (scale 1) carries axis `d`.
pub fn interpolate(roster: &Roster, axes: &[Vec<i64>], f: &mut impl FnMut(&[i64]) -> Rat) -> Poly {
    assert_eq!(roster.len(), axes.len());
    let mut prefix = Vec::with_capacity(axes.len());
    rec(roster, axes, &mut prefix, f)
}

fn rec(roster: &Roster, axes: &[Vec<i64>], prefix: &mut Vec<i64>, f: &mut impl FnMut(&[i64]) -> Rat) -> Poly {
    let d = prefix.len();
    if d == axes.len() {
        return Poly::constant(roster, f(prefix));
    }
    let xs = &axes[d];
    let mut dd: Vec<Poly> = Vec::with_capacity(xs.len());
    for &x in xs {
        prefix.push(x);
        dd.push(rec(roster, axes, prefix, f));
        prefix.pop();
    }
    let n = dd.len();
    for k in 1..n {
        for i in (k..n).rev() {
            let den = int(xs[i] - xs[i - k]).recip();
            dd[i] = (&dd[i] - &dd[i - 1]).scale_by(&den);
        }
    }
    let x = Poly::var(roster, d);
    let mut p = dd[n - 1].clone();
    for k in (0..n - 1).rev() {
        p = &(&p * &(&x - &Poly::constant(roster, int(xs[k])))) + &dd[k];
    }
    p
}

/// Value of a polynomial with integer exponents at a rational point.
pub fn eval_at(p: &Poly, vals: &[Rat]) -> Rat {
    let r = p.roster();
    let mut acc = Rat::zero();
    for (m, c) in p.terms() {
        let mut v = c.clone();
        for (i, &e) in m.iter().enumerate() {
            let s = r.scale(i) as i32;
            assert_eq!(e % s, 0, "fractional exponent");
            let e = e / s;
            let b = if e >= 0 { vals[i].clone() } else { vals[i].recip() };
            for _ in 0..e.unsigned_abs() {
                v *= &b;
            }
        }
        acc += v;
    }
    acc
}

/// Total degree of a polynomial with nonnegative exponents, in true units.
pub fn total_degree(p: &Poly) -> i32 {
    let r = p.roster();
    p.terms()
        .map(|(m, _)| m.iter().enumerate().map(|(i, e)| e / r.scale(i) as i32).sum())
        .max()
        .unwrap_or(0)
}

/// Degree in one variable, in true units.
pub fn degree_in(p: &Poly, i: usize) -> i32 {
    p.exp_range(i).map(|(_, hi)| hi / p.roster().scale(i) as i32).unwrap_or(0)
}

pub fn plain_roster(names: &[&str]) -> Roster {
    Roster::new(names.iter().map(|n| super::poly::Var { name: n.to_string(), scale: 1 }).collect())
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_bivariate() {
        let r = plain_roster(&["x", "y"]);
        let mut f = |p: &[i64]| int(3 * p[0] * p[0] * p[1] - p[1] + 7);
        let axes = vec![(0..3).collect::<Vec<_>>(), (0..2).collect()];
        let p = interpolate(&r, &axes, &mut f);
        assert_eq!(total_degree(&p), 3);
        assert_eq!(eval_at(&p, &[int(5), int(-2)]), int(3 * 25 * -2 + 2 + 7));
    }
}
