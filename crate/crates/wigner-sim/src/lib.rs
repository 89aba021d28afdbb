//! The sealed-lab thought experiment as a question-order computation: a
//! friend inside the lab inquires about a system, an outside observer asks
//! an interference question about the whole lab. Whether the friend's
//! inquiry is modeled as completed (collapse) or kept unitary changes the
//! outside statistics, and that gap is the incompatibility being measured.

mod scenario;

pub use scenario::{
    build_collapse_scenario, build_quantum_scenario, incompatibility_report, run_branch, Branch,
    BranchReport, IncompatibilityReport, InputState, WignerScenario, Q_INTERFERENCE, Q_RECORD,
    Q_SYSTEM,
};
