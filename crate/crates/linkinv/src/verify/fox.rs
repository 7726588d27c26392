//! Alexander polynomial of a knot from the Wirtinger presentation and Fox calculus.

use num_traits::{One, Zero};

use crate::algebra::matrix::Mat;
use crate::algebra::poly::Roster;
use crate::algebra::rat::{int, Rat};
use crate::braid::BraidWord;
use crate::{Error, Poly};

/// Wirtinger presentation read off the closed braid diagram. Each relator
/// `x_o^e x_u x_o^{-e} x_v^{-1}` is stored as `(o, u, v, e)` over merged arc labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wirtinger {
    pub generators: usize,
    pub relators: Vec<(usize, usize, usize, i32)>,
}

impl Wirtinger {
    pub fn from_braid(b: &BraidWord) -> Self {
        let n = b.strands();
        let mut arc: Vec<usize> = (0..n).collect();
        let mut next = n;
        let mut raw = Vec::with_capacity(b.len());
        for (p, s) in b.letters() {
            // the strand leaving position p crosses over for s > 0, under for s < 0
            let (over, under) = if s > 0 { (arc[p], arc[p + 1]) } else { (arc[p + 1], arc[p]) };
            let fresh = next;
            next += 1;
            raw.push((over, under, fresh, s));
            if s > 0 {
                arc[p] = fresh;
                arc[p + 1] = over;
            } else {
                arc[p] = over;
                arc[p + 1] = fresh;
            }
        }
        // closing the braid glues the top arcs to the bottom ones
        let mut uf: Vec<usize> = (0..next).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                x = uf[x];
            }
            x
        }
        for (j, &a) in arc.iter().enumerate() {
            let (x, y) = (find(&mut uf, a), find(&mut uf, j));
            uf[x] = y;
        }
        let mut label = vec![usize::MAX; next];
        let mut generators = 0;
        for x in 0..next {
            let r = find(&mut uf, x);
            if label[r] == usize::MAX {
                label[r] = generators;
                generators += 1;
            }
            label[x] = label[r];
        }
        let relators = raw.into_iter().map(|(o, u, v, s)| (label[o], label[u], label[v], s)).collect();
        Wirtinger { generators, relators }
    }

    /// Fox Jacobian abelianized at `x_i -> t`.
    pub fn alexander_matrix(&self) -> Mat<Poly> {
        let r = Roster::t(1);
        let t = |e: i32| Poly::var_pow(&r, 0, e, 1);
        let one = Poly::constant(&r, Rat::one());
        let mut m = Mat::from_fn(self.relators.len(), self.generators, |_, _| Poly::zero_in(&r));
        for (i, &(o, u, v, e)) in self.relators.iter().enumerate() {
            m[(i, o)] = &m[(i, o)] + &(&one - &t(e));
            m[(i, u)] = &m[(i, u)] + &t(e);
            m[(i, v)] = &m[(i, v)] - &one;
        }
        m
    }
}

/// Symmetric representative with value 1 at `t = 1`.
pub fn symmetrize(p: &Poly) -> Result<Poly, Error> {
    let (lo, hi) = p.exp_range(0).ok_or(Error::AllCoefficientsZero)?;
    if (lo + hi) % 2 != 0 {
        return Err(Error::Invalid("no symmetric representative".into()));
    }
    let c = p.shift(&[-(lo + hi) / 2]);
    let at1 = c.terms().fold(Rat::zero(), |a, (_, x)| a + x);
    if at1.is_zero() {
        return Err(Error::Invalid("vanishes at t = 1".into()));
    }
    Ok(c.scale_by(&at1.recip()))
}

pub fn fox_alexander(b: &BraidWord) -> Result<Poly, Error> {
    let l = b.close().components;
    if l != 1 {
        return Err(Error::NotAKnot(l));
    }
    let w = Wirtinger::from_braid(b);
    let r = Roster::t(1);
    if w.relators.is_empty() {
        return Ok(Poly::constant(&r, int(1)));
    }
    if w.generators != w.relators.len() {
        return Err(Error::Invalid(format!("{} arcs for {} crossings", w.generators, w.relators.len())));
    }
    let m = w.alexander_matrix();
    let k = m.rows - 1;
    let minor = Mat::from_fn(k, k, |i, j| m[(i, j)].clone());
    symmetrize(&minor.det_bareiss().in_roster(&r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn t(e: i32) -> Poly {
        Poly::var_pow(&Roster::t(1), 0, e, 1)
    }

    #[test]
    fn trefoil() {
        let d = fox_alexander(&BraidWord::parse("2: 1 1 1").unwrap()).unwrap();
        assert_eq!(d, &(&t(1) - &Poly::one()) + &t(-1));
    }

    #[test]
    fn unknots() {
        for s in ["1:", "2: 1", "3: 1 -2"] {
            assert_eq!(fox_alexander(&BraidWord::parse(s).unwrap()).unwrap(), Poly::one().in_roster(&Roster::t(1)));
        }
        assert!(matches!(fox_alexander(&BraidWord::parse("2: 1 1").unwrap()), Err(Error::NotAKnot(2))));
    }

    #[test]
    fn presentation_shape() {
        let w = Wirtinger::from_braid(&BraidWord::parse("2: 1 1 1").unwrap());
        assert_eq!(w.generators, 3);
        assert_eq!(w.relators.len(), 3);
    }
}
