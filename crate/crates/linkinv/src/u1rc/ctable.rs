use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::rat::{factorial, int, Rat};
use crate::algebra::series::HSeries;

/// `C_{k,n}`: coefficient of `h^k` in `((1+h)^{-1/2} - 1)^n / n!`, for `n <= k <= kmax`.
#[derive(Clone, Debug, PartialEq)]
pub struct CTable {
    pub kmax: usize,
    entries: BTreeMap<(usize, usize), Rat>,
}

impl CTable {
    pub fn get(&self, k: usize, n: usize) -> Rat {
        self.entries.get(&(k, n)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rat)> {
        self.entries.iter()
    }
}

pub fn gen_c_table(kmax: usize) -> CTable {
    let t = kmax as i32;
    let base = &HSeries::<Rat>::binomial(&Rat::new((-1).into(), 2.into()), t) - &HSeries::constant(int(1), t);
    let mut entries = BTreeMap::new();
    let mut p = HSeries::constant(int(1), t);
    for n in 0..=kmax {
        let nf = Rat::from_integer(factorial(n as u32));
        for k in n..=kmax {
            let c = p.get(k as i32).unwrap() / &nf;
            if !c.is_zero() {
                entries.insert((k, n), c);
            }
        }
        p = &p * &base;
    }
    CTable { kmax, entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    #[test]
    fn known_values() {
        let c = gen_c_table(4);
        assert_eq!(c.get(0, 0), int(1));
        for k in 1..=4 {
            assert!(c.get(k, 0).is_zero());
        }
        assert_eq!(c.get(1, 1), rat(-1, 2));
        assert_eq!(c.get(2, 1), rat(3, 8));
        assert_eq!(c.get(2, 2), rat(1, 8));
    }
}
