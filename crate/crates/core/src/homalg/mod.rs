//! The Koszul homology algebra `A = H(K)` through homological degree four.

pub mod chart;
pub mod massey;
pub mod structure;

pub use chart::{Graded, HomologyChart};
pub use massey::{
    massey_triple, massey_triple_elements, massey_triple_with_lifts, MasseySpan, MasseyTriple,
};
pub use structure::{HomologyAlgebra, ProductTable, StructureChecks, TensorFamily, MAX_HDEG};
