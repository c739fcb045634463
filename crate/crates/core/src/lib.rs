//! Koszul homology algebras of graded quotient rings and the truncated
//! minimal free resolution of the residue field through degree five.

pub mod analysis;
pub mod corpus;
pub mod error;
pub mod exactlin;
pub mod homalg;
pub mod invariants;
pub mod koszul;
pub mod polyring;
pub mod report;
pub mod resolution;
pub mod ringdef;

pub use analysis::{Analysis, Codepth, CodepthSource};
pub use error::{Error, Result};
pub use exactlin::{Field, FieldSpec, Fp, Rational};
pub use homalg::HomologyAlgebra;
pub use invariants::{InvariantInput, InvariantReport};
pub use koszul::{KoszulComplex, KoszulElement};
pub use polyring::GradedQuotientRing;
pub use resolution::{oracle_betti, Fault, ResolutionF};
pub use ringdef::RingDefinition;
