use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use super::poly::LaurentPoly;
use super::rat::{Coeff, Field};

/// Dense square-or-rectangular matrix over any ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Mat<T> {
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Ring operations needed by generic matrix code, by reference where it matters.
pub trait RingElem: Clone {
    fn mul_ref(&self, o: &Self) -> Self;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn is_zero_elem(&self) -> bool;
}

impl<C: Coeff> RingElem for C {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.clone() + o.clone()
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }
}

impl<T: RingElem + Zero + One> Mat<T> {
    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn matmul(&self, o: &Self) -> Self {
        self.matmul_with(o, T::zero())
    }

    pub fn det_expansion(&self) -> T {
        self.det_expansion_with(T::zero(), T::one())
    }
}

impl<T: RingElem> Mat<T> {
    pub fn matmul_with(&self, o: &Self, zero: T) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out = Mat::from_fn(self.rows, o.cols, |_, _| zero.clone());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero_elem() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero_elem() {
                        out[(i, j)] = out[(i, j)].add_ref(&a.mul_ref(b));
                    }
                }
            }
        }
        out
    }

    /// Determinant by Laplace expansion along the first row, memoized over column sets.
    /// Division free, so it works over jets; cost is O(n 2^n).
    pub fn det_expansion_with(&self, zero: T, one: T) -> T {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return one;
        }
        // minors[mask] = det of rows (n - |mask|).. with columns in mask
        let mut minors: Vec<Option<T>> = vec![None; 1 << n];
        minors[0] = Some(one);
        for mask in 1usize..(1 << n) {
            let k = mask.count_ones() as usize;
            let r = n - k;
            let mut acc = zero.clone();
            let mut sign_pos = true;
            for c in 0..n {
                if mask & (1 << c) == 0 {
                    continue;
                }
                let a = &self[(r, c)];
                if !a.is_zero_elem() {
                    let sub = minors[mask & !(1 << c)].as_ref().unwrap();
                    let term = a.mul_ref(sub);
                    acc = if sign_pos { acc.add_ref(&term) } else { acc.sub_ref(&term) };
                }
                sign_pos = !sign_pos;
            }
            minors[mask] = Some(acc);
        }
        minors[(1 << n) - 1].take().unwrap()
    }
}

impl<C: Field> Mat<LaurentPoly<C>> {
    /// Fraction-free Gaussian elimination; every division is exact.
    pub fn det_bareiss(&self) -> LaurentPoly<C> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return LaurentPoly::one();
        }
        let mut a = self.clone();
        let mut sign = false;
        let mut prev = LaurentPoly::<C>::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            let t = a[(k, j)].clone();
                            a[(k, j)] = a[(i, j)].clone();
                            a[(i, j)] = t;
                        }
                        sign = !sign;
                    }
                    None => return LaurentPoly::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(&a[(i, j)] * &a[(k, k)]) - &(&a[(i, k)] * &a[(k, j)]);
                    a[(i, j)] = v.div_exact(&prev).expect("Bareiss step must divide exactly");
                }
                a[(i, k)] = LaurentPoly::zero();
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign {
            -d
        } else {
            d
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::{Poly, Roster};
    use crate::algebra::rat::{int, Rat};

    #[test]
    fn bareiss_matches_expansion() {
        let r = Roster::t(2);
        let t1 = Poly::var(&r, 0);
        let t2 = Poly::var(&r, 1);
        let one = Poly::one();
        let m = Mat::from_fn(3, 3, |i, j| match (i, j) {
            (0, 0) => &t1 - &one,
            (0, 1) => t2.clone(),
            (1, 0) => Poly::zero(),
            (1, 2) => &t1 * &t2,
            (2, 1) => &one - &t2,
            (2, 2) => t1.clone(),
            _ => one.clone(),
        });
        assert_eq!(m.det_bareiss(), m.det_expansion());
    }

    #[test]
    fn det_needs_pivoting() {
        let m: Mat<Poly> = Mat::from_fn(2, 2, |i, j| if i != j { Poly::one() } else { Poly::zero() });
        assert_eq!(m.det_bareiss(), -Poly::one());
    }

    #[test]
    fn rational_expansion() {
        let m: Mat<Rat> = Mat::from_fn(3, 3, |i, j| int(((i * 3 + j) * (i + 1)) as i64 % 7));
        let e = m.det_expansion();
        // cofactor reference
        let d = |a: &Mat<Rat>| {
            a[(0, 0)].clone() * (a[(1, 1)].clone() * a[(2, 2)].clone() - a[(1, 2)].clone() * a[(2, 1)].clone())
                - a[(0, 1)].clone() * (a[(1, 0)].clone() * a[(2, 2)].clone() - a[(1, 2)].clone() * a[(2, 0)].clone())
                + a[(0, 2)].clone() * (a[(1, 0)].clone() * a[(2, 1)].clone() - a[(1, 1)].clone() * a[(2, 0)].clone())
        };
        assert_eq!(e, d(&m));
    }
}
