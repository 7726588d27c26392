//! Exact invariants of braid closures: the Alexander-Conway function from the Burau
//! representation, the colored Jones polynomial from the sl2 R-matrix, and the
//! U(1)-reducible-connection series with its resummation into the colored Jones
//! polynomial.
//!
//! The algebra layer is generic over the coefficient type (see [`algebra::Coeff`] and
//! [`algebra::Field`]); the aliases below fix the exact rational instantiation used by
//! every invariant.

pub mod algebra;
pub mod braid;
pub mod burau;
pub mod rmatrix;
pub mod u1rc;
pub mod verify;

pub use algebra::rat::Rat;
pub use braid::{BraidWord, LinkClosure};

/// Laurent polynomial with rational coefficients.
pub type Poly = algebra::LaurentPoly<Rat>;
/// Truncated series in `h = q - 1` over rational polynomials.
pub type PolySeries = algebra::HSeries<Poly>;
/// Truncated series in `h` with rational coefficients.
pub type RatSeries = algebra::HSeries<Rat>;
/// Jet over rational polynomials.
pub type PolyJet = algebra::EpsJet<Poly>;
/// Quotient by a power of a fixed rational polynomial.
pub type PolyFrac = algebra::DenPowerFrac<Rat>;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("generator position {pos} out of range for {strands} strands")]
    PositionOutOfRange { pos: i64, strands: usize },
    #[error("series vanishes identically to its truncation order")]
    AllCoefficientsZero,
    #[error("leading coefficient is not invertible")]
    NotInvertible,
    #[error("jet exponential needs a zero constant term")]
    NonzeroConstantTerm,
    #[error("no value assigned to variable {0}")]
    MissingAssignment(String),
    #[error("inexact polynomial division")]
    InexactDivision,
    #[error("the Alexander-Conway function vanishes")]
    VanishingAlexander,
    #[error("{given} colors given for {components} components")]
    ColorCountMismatch { given: usize, components: usize },
    #[error("colors must be positive")]
    NonPositiveColor,
    #[error("interpolation disagrees with the held-out point: {0}")]
    InterpolationInconsistent(String),
    #[error("degree bound violated: {0}")]
    DegreeBoundViolated(String),
    #[error("substituted denominator vanishes through h^{0}")]
    DenominatorVanishesToOrder(i32),
    #[error("closure is not a knot ({0} components)")]
    NotAKnot(usize),
    #[error("state space of dimension {0} exceeds the limit")]
    SizeLimit(usize),
    #[error("negative powers of h survive: coefficient of h^{power} is {coeff}")]
    NegativePowersSurvive { power: i32, coeff: String },
    #[error("{0}")]
    Invalid(String),
}
