use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::rat::fmt_rat;
use crate::algebra::series::HSeries;
use crate::braid::BraidWord;
use crate::rmatrix::colored_jones;
use crate::u1rc::{substitute_colors, u1rc_series, U1RCSeries};
use crate::{Error, RatSeries};

/// Outcome of a verification: `residuals` lists the failing coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub check: String,
    pub input: Value,
    /// Series order, when the check has one.
    pub order: Option<usize>,
    pub pass: bool,
    pub residuals: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "check": self.check,
            "input": self.input,
            "order": self.order,
            "pass": self.pass,
            "residuals": self.residuals,
        })
    }
}

/// `sum_mu (prod mu) q^{lk(mu alpha)} Jhr(q^{mu alpha})` with `mu_1 = +1`, `mu_j = ±1`.
pub fn resummed(s: &U1RCSeries, colors: &[i64], order: usize) -> Result<RatSeries, Error> {
    let l = s.components;
    let mut acc: RatSeries = HSeries::zero(order as i32);
    for bits in 0..(1u32 << (l - 1)) {
        let mut alpha = colors.to_vec();
        let mut sign = 1;
        for j in 1..l {
            if bits >> (j - 1) & 1 == 1 {
                alpha[j] = -alpha[j];
                sign = -sign;
            }
        }
        let term = substitute_colors(s, &alpha, order)?;
        acc = if sign > 0 { &acc + &term } else { &acc - &term };
    }
    Ok(acc)
}

/// Resum the U(1)-RC series at integer colors and compare with the colored Jones polynomial
/// expanded in `h` through `h^order`.
pub fn resummation_check(b: &BraidWord, colors: &[i64], order: usize) -> Result<Report, Error> {
    let c = b.close();
    if colors.len() != c.components {
        return Err(Error::ColorCountMismatch { given: colors.len(), components: c.components });
    }
    let jones = colored_jones(b, colors)?;
    let n_max = if c.components >= 2 { order + 1 } else { order };
    let s = u1rc_series(b, n_max)?;
    let sum = resummed(&s, colors, order)?;
    for k in sum.lower()..0 {
        let v = sum.get(k).unwrap();
        if !v.is_zero() {
            return Err(Error::NegativePowersSurvive { power: k, coeff: fmt_rat(&v) });
        }
    }
    let js = HSeries::from_q_poly(&jones, order as i32);
    let mut residuals = Vec::new();
    for k in 0..=order as i32 {
        let d = sum.get(k).unwrap() - js.get(k).unwrap();
        if !d.is_zero() {
            residuals.push(format!("h^{k}: {}", fmt_rat(&d)));
        }
    }
    Ok(Report {
        check: "resummation".into(),
        input: json!({"braid": b.to_json(), "colors": colors}),
        order: Some(order),
        pass: residuals.is_empty(),
        residuals,
    })
}
