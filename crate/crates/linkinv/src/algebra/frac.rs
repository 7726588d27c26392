use serde_json::{json, Value};

use super::poly::LaurentPoly;
use super::rat::{Coeff, Field, Rat};

/// `num / den^pow` for a fixed nonzero base denominator.
#[derive(Clone, Debug)]
pub struct DenPowerFrac<C> {
    pub den: LaurentPoly<C>,
    pub num: LaurentPoly<C>,
    pub pow: u32,
}

impl<C: Field> DenPowerFrac<C> {
    pub fn new(den: LaurentPoly<C>, num: LaurentPoly<C>, pow: u32) -> Self {
        assert!(!num_traits::Zero::is_zero(&den), "zero base denominator");
        DenPowerFrac { den, num, pow }
    }

    /// Cancel factors of the base denominator out of the numerator.
    pub fn normalize(&self) -> Self {
        let mut num = self.num.clone();
        let mut pow = self.pow;
        if num_traits::Zero::is_zero(&num) {
            return DenPowerFrac { den: self.den.clone(), num, pow: 0 };
        }
        while pow > 0 {
            match num.div_exact(&self.den) {
                Some(q) => {
                    num = q;
                    pow -= 1;
                }
                None => break,
            }
        }
        DenPowerFrac { den: self.den.clone(), num, pow }
    }

    /// Same value as `other`, by cross multiplication.
    pub fn same_value(&self, o: &Self) -> bool {
        &self.num * &o.den.pow(o.pow) == &o.num * &self.den.pow(self.pow)
    }

    /// Bring to a larger power by multiplying the numerator.
    pub fn with_pow(&self, p: u32) -> Self {
        assert!(p >= self.pow);
        DenPowerFrac { den: self.den.clone(), num: &self.num * &self.den.pow(p - self.pow), pow: p }
    }
}

impl<C: Coeff> PartialEq for DenPowerFrac<C> {
    fn eq(&self, o: &Self) -> bool {
        self.den == o.den && self.num == o.num && self.pow == o.pow
    }
}

impl DenPowerFrac<Rat> {
    pub fn to_json(&self) -> Value {
        json!({"num": self.num.to_json(), "den_pow": self.pow})
    }
}
