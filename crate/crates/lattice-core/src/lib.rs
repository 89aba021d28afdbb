//! Finite bounded lattices with orthocomplementation: construction from
//! cover relations, the taxonomy of law checks (complemented, orthomodular,
//! distributive, Boolean, atomic), two-valued homomorphisms, Birkhoff
//! representation of distributive lattices, and subspace lattices generated
//! by rays in dimension 2 or 3.

mod birkhoff;
mod classify;
mod error;
mod family;
mod io;
mod lattice;
mod ortho;
mod projector;

pub use birkhoff::{birkhoff_representation, BirkhoffRepresentation};
pub use classify::{classify, ClassificationReport, CLASSIFY_MAX_ELEMENTS};
pub use error::{LatticeError, LatticeFailure};
pub use family::{generate_family, Family, BOOLEAN_MAX, CHAIN_MAX, MO_MAX};
pub use io::LatticeFile;
pub use lattice::{ElementId, Lattice, PosetSpec};
pub use ortho::{find_orthocomplementations, two_valued_homomorphisms, OrthoMap, TwoValuedMap};
pub use projector::{projector_lattice, ANGLE_TOLERANCE};
