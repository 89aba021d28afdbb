//! Monte-Carlo simulation of the generalized key-agreement protocol:
//! Alice inquires a fresh system about a random question class, the system
//! travels to Bob, who inquires independently; an eavesdropper may inquire
//! in between. Disturbance of non-implied inquiries shows up as errors on
//! sifted rounds.

mod config;
mod rng;
mod run;

pub use config::{EveStrategy, ProtocolConfig, ProtocolError, ProtocolStats, RoundRecord};
pub use run::{
    bb84_qubit_theory, bb84_space, detection_curve, flip_model_protocol, records_to_csv,
    run_protocol, DetectionPoint,
};
pub use rng::derive_seed;
