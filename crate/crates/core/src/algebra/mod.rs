//! Structure-constant representations of algebras.

pub mod binary;
pub mod element;
pub mod graded;
pub mod io;
pub mod maps;
pub mod nary;
pub mod superalg;

pub use binary::{Algebra, TableBuilder};
pub use element::{Element, SparseVec};
pub use graded::{GradedAlgebra, GradedElement};
pub use io::{AlgebraFile, ProductTable, BRACKET, PRODUCT};
pub use maps::{BilinearMap, LinearMap};
pub use nary::{permutations_with_sign, tuples, NAryAlgebra};
pub use superalg::SuperAlgebra;
