//! Exact arithmetic: rationals, Laurent polynomials on scaled exponent lattices,
//! truncated h-series, jets, denominator-power fractions and fixed-point complex numbers.

pub mod frac;
pub mod interp;
pub mod jet;
pub mod matrix;
pub mod numeric;
pub mod poly;
pub mod rat;
pub mod series;

pub use frac::DenPowerFrac;
pub use jet::EpsJet;
pub use matrix::Mat;
pub use numeric::{eval_complex, CFixed, Fixed};
pub use poly::{LaurentPoly, Mono, Roster, Var};
pub use rat::{Coeff, Field, Scalar};
pub use series::HSeries;
