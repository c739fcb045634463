//! Exact scalars and deterministic linear algebra.

pub mod field;
pub mod matrix;
pub mod sparse;
pub mod subspace;

pub use field::{Field, FieldSpec, Fp, Rational};
pub use matrix::{complement_basis, kernel_basis, rref, solve, Matrix};
pub use sparse::SparseVec;
pub use subspace::{ColumnEchelon, Decomposer, Echelon, Insert, Subspace};
