//! Questions arranged in per-context sub-lattices, connected across
//! contexts by equivalence classes. Consistency checks verify that classes
//! respect the lattice structure, and when they do the structure lifts to a
//! quotient lattice on classes.

mod checks;
mod error;
pub mod fixtures;
mod io;
mod quotient;
mod space;

pub use checks::{
    check_structure_preservation, check_sublattice_orthogonality, detect_class_joins, JoinFlag,
    JoinReport, OrthogonalityReport, OrthogonalityViolation, PreservationDefect,
    PreservationFailure, PreservationReport,
};
pub use error::SpaceError;
pub use io::SpaceFile;
pub use quotient::{enumerate_refinements, lift_quotient, resolution_restriction};
pub use space::{
    ClassId, Context, Question, QuestionSpace, RunId, SlotId, ABSURD_CLASS, TAUTOLOGY_CLASS,
};
