//! Theories as maps from ordered question sequences to joint answer
//! distributions, with contextuality, isolation, and disturbance analyses,
//! the deterministic-flip contradiction, and a Gleason frame-function check.

mod analysis;
mod dist;
mod error;
pub mod fixtures;
mod gleason;
mod io;
mod theory;
mod triad;
mod weight;

pub use analysis::{
    disturbance_profile, is_isolated, is_noncontextual, ContextualityDecision, DisturbanceReport,
    IsolationVerdict, DECISION_TOLERANCE,
};
pub use dist::{
    AnswerSet, InquirySequence, JointDistribution, NORMALIZATION_TOLERANCE,
};
pub use error::TheoryError;
pub use gleason::{gleason_frame_check, GleasonReport};
pub use io::{matrix_data, QuantumOutcomeData, TabulatedEntry, TheoryFile};
pub use theory::{ClassDistribution, Outcome, Theory};
pub use triad::{inconsistent_triad, TriadReport};
pub use weight::Weight;
