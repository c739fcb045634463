//! The truncated minimal free resolution `F` of the residue field.

pub mod construction;
pub mod faults;
pub mod syzygy;
pub mod verify;

pub use construction::{
    BlockEntry, BlockMap, Differential, FreeElement, FreeModule, GroupBlock, GroupKind,
    ResolutionF, Summand, SummandGroup, MAX_F_DEGREE,
};
pub use faults::{Fault, SIGN_FLIPS};
pub use syzygy::{oracle_betti, OracleBetti};
pub use verify::{
    ComplexFailure, ComplexReport, DegreeCheck, ExactnessReport, MinimalityReport,
    VerificationReport,
};
