//! Burau representation and the Alexander-Conway function of a braid closure.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::matrix::Mat;
use crate::algebra::poly::Roster;
use crate::algebra::rat::int;
use crate::braid::{BraidWord, LinkClosure};
use crate::{Error, Poly};

/// Block of `sigma^{±1}` with incoming strand variables `t_a`, `t_b` (roster indices).
/// Column k is the image of the k-th incoming basis vector.
pub fn rho(sign: i32, r: &Roster, a: usize, b: usize) -> Mat<Poly> {
    let one = Poly::constant(r, int(1));
    let ta = Poly::var(r, a);
    let tb = Poly::var(r, b);
    let ta_inv = Poly::var_pow(r, a, -1, 1);
    let tb_inv = Poly::var_pow(r, b, -1, 1);
    let z = Poly::zero_in(r);
    if sign > 0 {
        let e = [&one - &tb_inv, ta_inv, one.clone(), z];
        Mat::from_fn(2, 2, |i, j| e[2 * i + j].clone())
    } else {
        let e = [z, one.clone(), tb.clone(), &(&ta_inv * &tb) * &(&one - &ta)];
        Mat::from_fn(2, 2, |i, j| e[2 * i + j].clone())
    }
}

/// `A_c ... A_1`: later letters act after earlier ones.
pub fn burau_of_braid(b: &BraidWord, c: &LinkClosure) -> Mat<Poly> {
    let r = Roster::t(c.components);
    let n = b.strands();
    let one = Poly::constant(&r, int(1));
    let zero = Poly::zero_in(&r);
    let mut m = Mat::from_fn(n, n, |i, j| if i == j { one.clone() } else { zero.clone() });
    for ((p, s), &(i1, i2)) in b.letters().zip(&c.crossing_components) {
        let blk = rho(s, &r, i1, i2);
        // left-multiply by the block acting on rows p, p+1
        for col in 0..n {
            let x = m[(p, col)].clone();
            let y = m[(p + 1, col)].clone();
            m[(p, col)] = &(&blk[(0, 0)] * &x) + &(&blk[(0, 1)] * &y);
            m[(p + 1, col)] = &(&blk[(1, 0)] * &x) + &(&blk[(1, 1)] * &y);
        }
    }
    m
}

/// `t_1^{1/2} - t_1^{-1/2}`.
pub fn t_half_diff(r: &Roster, i: usize) -> Poly {
    &Poly::var_pow(r, i, 1, 2) - &Poly::var_pow(r, i, -1, 2)
}

/// `det(1 - Q B)` with `Q` projecting out the first basis vector.
pub fn reduced_det(b: &BraidWord, c: &LinkClosure) -> Poly {
    let m = burau_of_braid(b, c);
    let r = Roster::t(c.components);
    let n = b.strands();
    let a = Mat::from_fn(n, n, |i, j| {
        let id = if i == j { Poly::constant(&r, int(1)) } else { Poly::zero_in(&r) };
        if i == 0 {
            id
        } else {
            &id - &m[(i, j)]
        }
    });
    a.det_bareiss().in_roster(&r)
}

/// The monomial prefactor `t_1^{1/2} prod_j t_j^{(-N_j + sum_i l_ij)/2}`, as scaled exponents.
pub fn phi0_exponents(c: &LinkClosure) -> Vec<i32> {
    let mut e: Vec<i32> =
        (0..c.components).map(|j| (c.column_sum(j) - c.strands_per_component[j] as i64) as i32).collect();
    e[0] += 1;
    e
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlexanderResult {
    pub components: usize,
    /// The Alexander-Conway function for links; `None` for knots, where it is not a polynomial.
    pub conway: Option<Poly>,
    /// The Alexander polynomial `nabla (t^{1/2} - t^{-1/2})` for knots.
    pub delta: Option<Poly>,
    /// `det(1 - Q B)` before normalization.
    pub det: Poly,
    pub vanishing: bool,
}

impl AlexanderResult {
    /// `nabla * (t_1^{1/2} - t_1^{-1/2})`, defined in both cases.
    pub fn nabla_times_diff(&self) -> Poly {
        match (&self.conway, &self.delta) {
            (Some(n), _) => n * &t_half_diff(&Roster::t(self.components), 0),
            (None, Some(d)) => d.clone(),
            _ => unreachable!(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({"L": self.components, "vanishing": self.vanishing});
        if let Some(n) = &self.conway {
            v["conway"] = n.to_json();
        }
        if let Some(d) = &self.delta {
            v["delta"] = d.to_json();
        }
        v
    }
}

pub fn alexander_conway(b: &BraidWord) -> Result<AlexanderResult, Error> {
    let c = b.close();
    let r = Roster::t(c.components);
    let det = reduced_det(b, &c);
    let num = det.shift(&phi0_exponents(&c));
    let vanishing = det.is_zero();
    if c.components == 1 {
        return Ok(AlexanderResult { components: 1, conway: None, delta: Some(num), det, vanishing });
    }
    let conway = num.div_exact(&t_half_diff(&r, 0)).ok_or(Error::InexactDivision)?.in_roster(&r);
    Ok(AlexanderResult { components: c.components, conway: Some(conway), delta: None, det, vanishing })
}

/// Torres formula for removing component `i`.
pub fn torres_check(b: &BraidWord, i: usize) -> Result<bool, Error> {
    let c = b.close();
    let l = c.components;
    if l < 2 || i >= l {
        return Err(Error::Invalid(format!("Torres check needs component {} of a link with L >= 2", i + 1)));
    }
    let r = Roster::t(l);
    let full = alexander_conway(b)?;
    let lhs = full.conway.unwrap().at_one(i);
    let mut plus = vec![0; l];
    for j in 0..l {
        if j != i {
            plus[j] = c.lk(i, j) as i32;
        }
    }
    let minus: Vec<i32> = plus.iter().map(|x| -x).collect();
    let one = Poly::constant(&r, int(1));
    let bracket = &one.shift(&plus) - &one.shift(&minus);
    let sub = alexander_conway(&b.delete_component(i))?;
    // sublink components keep their relative order
    let lift = |p: &Poly| {
        p.map_exponents(&r, |m| {
            let mut e: crate::algebra::Mono = smallvec::SmallVec::from_elem(0, l);
            for (k, &x) in m.iter().enumerate() {
                e[if k < i { k } else { k + 1 }] = x;
            }
            e
        })
    };
    Ok(match (&sub.conway, &sub.delta) {
        (Some(n), _) => lhs == &bracket * &lift(n),
        (None, Some(d)) => {
            let j = if i == 0 { 1 } else { 0 };
            &lhs * &t_half_diff(&r, j) == &bracket * &lift(d)
        }
        _ => unreachable!(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::algebra::rat::int;

    fn alex(s: &str) -> AlexanderResult {
        alexander_conway(&BraidWord::parse(s).unwrap()).unwrap()
    }

    fn tpoly(l: usize, terms: &[(&[i32], i64)]) -> Poly {
        let r = Roster::t(l);
        terms.iter().fold(Poly::zero_in(&r), |acc, (e, c)| &acc + &Poly::monomial(&r, e, int(*c)))
    }

    #[test]
    fn rho_inverse_pair() {
        let r = Roster::t(2);
        let p = rho(1, &r, 0, 1).matmul(&rho(-1, &r, 1, 0));
        assert_eq!(p, Mat::identity(2));
    }

    #[test]
    fn anchors() {
        assert_eq!(alex("1:").delta.unwrap(), Poly::one());
        assert_eq!(alex("2: 1 1").conway.unwrap(), Poly::one());
        assert!(alex("2:").conway.unwrap().is_zero());
        assert_eq!(alex("2: 1 1 1").delta.unwrap(), tpoly(1, &[(&[2], 1), (&[0], -1), (&[-2], 1)]));
        assert_eq!(alex("3: 1 2 1 2").delta.unwrap(), tpoly(1, &[(&[2], 1), (&[0], -1), (&[-2], 1)]));
        assert_eq!(alex("3: 1 -2 1 -2").delta.unwrap(), tpoly(1, &[(&[2], -1), (&[0], 3), (&[-2], -1)]));
        // (t1 t2 + 1) / sqrt(t1 t2)
        assert_eq!(alex("2: 1 1 1 1").conway.unwrap(), tpoly(2, &[(&[1, 1], 1), (&[-1, -1], 1)]));
    }

    #[test]
    fn identity_word() {
        let b = BraidWord::parse("2: 1 -1").unwrap();
        let c = b.close();
        assert_eq!(burau_of_braid(&b, &c), Mat::identity(2));
    }

    #[test]
    fn torres() {
        for s in ["2: 1 1", "2: 1 1 1 1", "2:", "3: 1 1 2 2", "3: 1 2 1 1 2"] {
            let b = BraidWord::parse(s).unwrap();
            for i in 0..b.close().components {
                assert!(torres_check(&b, i).unwrap(), "{s} {i}");
            }
        }
    }
}
