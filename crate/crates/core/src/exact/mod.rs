//! Exact scalar and polynomial arithmetic.

pub mod poly;
pub mod scalar;

pub use poly::{frac_eq, DerivationSpec, Fraction, Monomial, Polynomial};
pub use scalar::Scalar;
