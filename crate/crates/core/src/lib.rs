//! Exact computations with transposed Poisson algebras and their relatives.
//!
//! Algebras are given by structure constants over `Q` or `Q(i)`. The crate
//! checks polynomial identities on basis tuples, solves for δ-derivations,
//! Hom-Lie maps and compatible products as exact nullspaces, and builds the
//! standard constructions (brackets from derivations, Kantor doubles, n-Lie
//! lifts, oscillator and Witt families).

pub mod algebra;
pub mod catalog;
pub mod constructions;
pub mod error;
pub mod exact;
pub mod field;
pub mod identity;
pub mod linsolve;
pub mod solvers;

pub use error::{Error, Result};
