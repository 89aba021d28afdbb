use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use theory_engine::{
    disturbance_profile, is_isolated, DisturbanceReport, InquirySequence, IsolationVerdict,
    JointDistribution, Outcome, Theory, TheoryError,
};

/// Class id for the system question asked from inside the lab.
pub const Q_SYSTEM: &str = "Q_fS";
/// Class id for the friend's record question.
pub const Q_RECORD: &str = "Q_fF";
/// Class id for the outside interference question: "is the whole lab in the
/// state the interaction produces from the superposition input?"
pub const Q_INTERFERENCE: &str = "Q_int_prime";

/// What the system is prepared in before the friend's measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputState {
    /// Equal superposition of the two system alternatives.
    Superposition,
    /// A definite alternative; the two accounts then agree everywhere.
    Eigenstate,
}

/// Which account of the friend's measurement the transcript follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// The friend's inquiry is treated as a completed measurement before
    /// the outside question is asked.
    FriendFirst,
    /// The outside question is asked against the unitary description of the
    /// lab; the friend's questions follow.
    WignerFirst,
}

#[derive(Debug, Clone)]
pub struct WignerScenario {
    pub theory: Theory,
    pub input: InputState,
    /// Human-readable tag: "unitary" or "collapse".
    pub account: String,
}

// Joint basis |s, f> with s in {0, 1} and f in {ready, 0, 1}; index = 3s + f.
const DIM: usize = 6;

fn basis_projector(indices: &[usize]) -> DMatrix<Complex64> {
    let mut m = DMatrix::<Complex64>::zeros(DIM, DIM);
    for &i in indices {
        m[(i, i)] = Complex64::new(1.0, 0.0);
    }
    m
}

fn ket_projector(amplitudes: &[(usize, f64)]) -> DMatrix<Complex64> {
    let mut v = DMatrix::<Complex64>::zeros(DIM, 1);
    for &(i, a) in amplitudes {
        v[(i, 0)] = Complex64::new(a, 0.0);
    }
    let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let v = v / Complex64::new(norm, 0.0);
    &v * v.adjoint()
}

/// The measurement interaction: |s, ready> <-> |s, s>, everything else fixed.
fn interaction_unitary() -> DMatrix<Complex64> {
    let mut u = DMatrix::<Complex64>::identity(DIM, DIM);
    for (a, b) in [(0, 1), (3, 5)] {
        u[(a, a)] = Complex64::ZERO;
        u[(b, b)] = Complex64::ZERO;
        u[(a, b)] = Complex64::ONE;
        u[(b, a)] = Complex64::ONE;
    }
    u
}

fn classes() -> BTreeMap<String, Vec<Outcome>> {
    let mut classes = BTreeMap::new();
    classes.insert(
        Q_SYSTEM.to_string(),
        vec![
            Outcome { answer: "0".into(), projector: basis_projector(&[0, 1, 2]) },
            Outcome { answer: "1".into(), projector: basis_projector(&[3, 4, 5]) },
        ],
    );
    classes.insert(
        Q_RECORD.to_string(),
        vec![
            Outcome { answer: "ready".into(), projector: basis_projector(&[0, 3]) },
            Outcome { answer: "0".into(), projector: basis_projector(&[1, 4]) },
            Outcome { answer: "1".into(), projector: basis_projector(&[2, 5]) },
        ],
    );
    // U|+, ready> = (|0,0> + |1,1>)/sqrt(2), indices 1 and 5
    let phi = ket_projector(&[(1, 1.0), (5, 1.0)]);
    let rest = DMatrix::<Complex64>::identity(DIM, DIM) - &phi;
    classes.insert(
        Q_INTERFERENCE.to_string(),
        vec![
            Outcome { answer: "t".into(), projector: phi },
            Outcome { answer: "f".into(), projector: rest },
        ],
    );
    classes
}

fn initial_rho(input: InputState) -> DMatrix<Complex64> {
    // system state tensored with the friend's ready state
    let psi = match input {
        InputState::Superposition => ket_projector(&[(0, 1.0), (3, 1.0)]),
        InputState::Eigenstate => ket_projector(&[(0, 1.0)]),
    };
    let u = interaction_unitary();
    &u * psi * u.adjoint()
}

/// The lab after the friend's interaction, described unitarily. All
/// branch differences then come from the order of inquiries alone.
pub fn build_quantum_scenario(input: InputState) -> WignerScenario {
    WignerScenario {
        theory: Theory::Quantum { rho: initial_rho(input), classes: classes() },
        input,
        account: "unitary".to_string(),
    }
}

/// Objective-collapse foil: the friend's measurement decoheres the record
/// unconditionally, so the interference question loses its sensitivity and
/// both branch orders give the same answer statistics.
pub fn build_collapse_scenario(input: InputState) -> WignerScenario {
    let rho = initial_rho(input);
    let p0 = basis_projector(&[0, 1, 2]);
    let p1 = basis_projector(&[3, 4, 5]);
    let collapsed = &p0 * &rho * &p0 + &p1 * &rho * &p1;
    WignerScenario {
        theory: Theory::Quantum { rho: collapsed, classes: classes() },
        input,
        account: "collapse".to_string(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BranchReport {
    pub branch: Branch,
    pub sequence: InquirySequence,
    pub joint: JointDistribution,
    /// Probability of the affirmative interference answer.
    pub interference_probability: f64,
    /// Re-asking the record question must reproduce the same answer.
    pub isolation_verdict: IsolationVerdict,
}

fn branch_sequence(branch: Branch) -> InquirySequence {
    match branch {
        Branch::FriendFirst => InquirySequence::of(vec![Q_SYSTEM, Q_INTERFERENCE]),
        Branch::WignerFirst => InquirySequence::of(vec![Q_INTERFERENCE, Q_SYSTEM, Q_RECORD]),
    }
}

pub fn run_branch(
    scenario: &WignerScenario,
    branch: Branch,
) -> Result<BranchReport, TheoryError> {
    let sequence = branch_sequence(branch);
    let joint = scenario.theory.evaluate(&sequence)?;
    let coord = sequence
        .classes
        .iter()
        .position(|c| c == Q_INTERFERENCE)
        .expect("interference question present");
    let interference_probability = joint
        .weights
        .iter()
        .filter(|(tuple, _)| tuple[coord] == "t")
        .map(|(_, w)| w.to_f64())
        .sum();
    // the friend's record is stable under repetition in either account
    let mut extended = sequence.classes.clone();
    extended.push(Q_RECORD.to_string());
    extended.push(Q_RECORD.to_string());
    let isolation_verdict = is_isolated(
        &scenario.theory,
        &InquirySequence { classes: extended },
        1e-12,
    )?;
    Ok(BranchReport {
        branch,
        sequence,
        joint,
        interference_probability,
        isolation_verdict,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct IncompatibilityReport {
    pub input: InputState,
    pub account: String,
    pub friend_first: BranchReport,
    pub wigner_first: BranchReport,
    /// Difference of the interference probabilities across branch orders.
    pub gap: f64,
    pub conflict: bool,
    /// How inserting the friend's inquiry changes the interference
    /// statistics, as a total-variation distance.
    pub disturbance: DisturbanceReport,
}

pub fn incompatibility_report(
    scenario: &WignerScenario,
    tolerance: f64,
) -> Result<IncompatibilityReport, TheoryError> {
    let friend_first = run_branch(scenario, Branch::FriendFirst)?;
    let wigner_first = run_branch(scenario, Branch::WignerFirst)?;
    let gap =
        (friend_first.interference_probability - wigner_first.interference_probability).abs();
    let disturbance = disturbance_profile(
        &scenario.theory,
        &InquirySequence::of(vec![Q_INTERFERENCE]),
        Q_SYSTEM,
        0,
    )?;
    Ok(IncompatibilityReport {
        input: scenario.input,
        account: scenario.account.clone(),
        friend_first,
        wigner_first,
        gap,
        conflict: gap > tolerance,
        disturbance,
    })
}
