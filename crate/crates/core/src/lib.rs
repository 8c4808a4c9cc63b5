//! Exact computer algebra for the quantum cohomology of the moduli space
//! of odd-degree rank-two stable bundles over a Riemann surface.
//!
//! The algebra kernel ([`algebra`], [`linalg`], [`quotient`]) is generic over
//! the coefficient field; the rest of the crate works over arbitrary
//! precision rationals through the aliases below.

pub mod algebra;
pub mod decomposition;
pub mod error;
pub mod gw;
pub mod jacobian;
pub mod linalg;
pub mod qh;
pub mod quotient;
pub mod relations;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Coefficient;

/// Exact rational numbers.
pub type Rational = num_rational::BigRational;
/// Elements with rational coefficients.
pub type Element = algebra::Element<Rational>;
/// Quotients of `Q[α, β, γ]` with rational coefficients.
pub type QuotientRing = quotient::QuotientPresentation<Rational>;
