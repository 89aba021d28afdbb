use lattice_core::LatticeError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpaceError {
    #[error("questions live in different contexts: {0}:{1} vs {2}:{3}")]
    DifferentContext(String, u32, String, u32),
    #[error("sub-lattice {0}:{1} has no orthocomplementation")]
    NoOrthoMap(String, u32),
    #[error("element `{element}` in {run}:{slot} has no class assignment")]
    MissingClass {
        run: String,
        slot: u32,
        element: String,
    },
    #[error("class assignment references unknown element `{0}` in {1}:{2}")]
    UnknownElement(String, String, u32),
    #[error("no sub-lattice at {0}:{1}")]
    UnknownContext(String, u32),
    #[error("no sub-lattices for run `{0}`")]
    UnknownRun(String),
    #[error("question `{0}` not found in {1}:{2}")]
    UnknownQuestion(String, String, u32),
    #[error("{bound} classes disagree across sub-lattices: `{found}` vs `{expected}`")]
    InconsistentBoundClass {
        bound: String,
        found: String,
        expected: String,
    },
    #[error("structure preservation fails; quotient is not well defined")]
    PreservationFailed,
    #[error("quotient lattice is not atomic")]
    NotAtomic,
    #[error("malformed key `{0}` (expected `run:slot` or `run:slot:element`)")]
    BadKey(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}
