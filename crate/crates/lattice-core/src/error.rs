use serde::Serialize;
use thiserror::Error;

/// Why a pair of elements has no unique join or meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeFailure {
    NoUpperBound,
    NoLeastUpperBound,
    NoLowerBound,
    NoGreatestLowerBound,
}

impl std::fmt::Display for LatticeFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            LatticeFailure::NoUpperBound => "no-upper-bound",
            LatticeFailure::NoLeastUpperBound => "no-least-upper-bound",
            LatticeFailure::NoLowerBound => "no-lower-bound",
            LatticeFailure::NoGreatestLowerBound => "no-greatest-lower-bound",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Error)]
pub enum LatticeError {
    #[error("empty posets are rejected")]
    Empty,
    #[error("duplicate element identifier `{0}`")]
    DuplicateElement(String),
    #[error("cover relation mentions unknown element `{0}`")]
    UnknownElement(String),
    #[error("cover relation contains a cycle")]
    CyclicCovers,
    #[error("not a lattice: pair ({}, {}) has {reason}", pair.0, pair.1)]
    NotALattice {
        pair: (String, String),
        reason: LatticeFailure,
    },
    #[error("orthocomplementation violates {law}: witness {witness:?}")]
    InvalidOrthoMap { law: String, witness: Vec<String> },
    #[error("lattice is not distributive: witness ({}, {}, {})", witness.0, witness.1, witness.2)]
    NotDistributive { witness: (String, String, String) },
    #[error("lattice has {0} elements, exceeding the exhaustive-check bound of {1}")]
    SizeBound(usize, usize),
    #[error("ray closure exceeds the configured size bound")]
    NotClosed,
    #[error("ray {0} is numerically degenerate (near-zero norm)")]
    DegenerateRay(usize),
    #[error("orthocomplementation requires a complemented lattice; `{0}` has no complement")]
    NotComplemented(String),
}
