use std::collections::BTreeMap;

use question_space::{lift_quotient, QuestionSpace};
use rand::Rng;
use theory_engine::{InquirySequence, JointDistribution, Theory, TheoryError};

use crate::config::{EveStrategy, ProtocolConfig, ProtocolError, ProtocolStats, RoundRecord};
use crate::rng::{derive_seed, round_rng};

// per-round rng streams
const STREAM_ALICE: u64 = 0;
const STREAM_EVE_DECISION: u64 = 1;
const STREAM_EVE_CLASS: u64 = 2;
const STREAM_BOB: u64 = 3;
const STREAM_OUTCOME: u64 = 4;
const STREAM_SAMPLE: u64 = 5;
const STREAM_STATE: u64 = 6;

/// Qubit instantiation for the protocol: maximally mixed state (so the key
/// is uniform) with the conjugate classes Z and X.
pub fn bb84_qubit_theory() -> Theory {
    use nalgebra::DMatrix;
    use num_complex::Complex64;
    let c = |re: f64| Complex64::new(re, 0.0);
    let ket = |v: [f64; 2]| {
        let n = (v[0] * v[0] + v[1] * v[1]).sqrt();
        DMatrix::from_fn(2, 2, move |i, j| c(v[i] * v[j] / (n * n)))
    };
    let mut classes = BTreeMap::new();
    classes.insert(
        "Z".to_string(),
        vec![
            theory_engine::Outcome { answer: "t".into(), projector: ket([1.0, 0.0]) },
            theory_engine::Outcome { answer: "f".into(), projector: ket([0.0, 1.0]) },
        ],
    );
    classes.insert(
        "X".to_string(),
        vec![
            theory_engine::Outcome { answer: "t".into(), projector: ket([1.0, 1.0]) },
            theory_engine::Outcome { answer: "f".into(), projector: ket([1.0, -1.0]) },
        ],
    );
    Theory::Quantum {
        rho: DMatrix::identity(2, 2) * c(0.5),
        classes,
    }
}

fn sample_tuple(joint: &JointDistribution, u: f64) -> Vec<String> {
    let mut acc = 0.0;
    let mut last: Option<&Vec<String>> = None;
    for (tuple, w) in &joint.weights {
        acc += w.to_f64();
        last = Some(tuple);
        if u < acc {
            return tuple.clone();
        }
    }
    // round-off tail: fall back to the final tuple
    last.expect("nonempty distribution").clone()
}

fn simulate(
    evaluate: &dyn Fn(u64, &InquirySequence) -> Result<JointDistribution, TheoryError>,
    config: &ProtocolConfig,
) -> Result<(ProtocolStats, Vec<RoundRecord>), ProtocolError> {
    config.validate()?;
    let classes = &config.question_classes;
    let mut records = Vec::with_capacity(config.rounds as usize);
    let mut sifted_count = 0u64;
    let mut sampled_count = 0u64;
    let mut sampled_errors = 0u64;
    let mut eve_information_rounds = 0u64;

    for round in 0..config.rounds {
        let alice_class =
            classes[round_rng(config.seed, round, STREAM_ALICE).random_range(0..classes.len())].clone();
        let intercept = match config.eve_strategy {
            EveStrategy::None => false,
            _ => round_rng(config.seed, round, STREAM_EVE_DECISION).random::<f64>() < config.eve_rate,
        };
        let eve_class = if intercept {
            Some(match &config.eve_strategy {
                EveStrategy::None => unreachable!(),
                EveStrategy::InterceptResendUniform => classes
                    [round_rng(config.seed, round, STREAM_EVE_CLASS).random_range(0..classes.len())]
                .clone(),
                EveStrategy::InterceptResendFixed(class) => class.clone(),
                EveStrategy::InterceptResendMatching => alice_class.clone(),
            })
        } else {
            None
        };
        let bob_class =
            classes[round_rng(config.seed, round, STREAM_BOB).random_range(0..classes.len())].clone();

        let mut seq = vec![alice_class.clone()];
        if let Some(ec) = &eve_class {
            seq.push(ec.clone());
        }
        seq.push(bob_class.clone());
        let joint = evaluate(round, &InquirySequence { classes: seq })?;
        let tuple = sample_tuple(
            &joint,
            round_rng(config.seed, round, STREAM_OUTCOME).random::<f64>(),
        );

        let alice_answer = tuple[0].clone();
        let eve_answer = eve_class.as_ref().map(|_| tuple[1].clone());
        let bob_answer = tuple.last().expect("nonempty tuple").clone();

        let sifted = alice_class == bob_class;
        let error = sifted.then(|| alice_answer != bob_answer);
        if sifted {
            sifted_count += 1;
            if eve_class.as_deref() == Some(alice_class.as_str()) {
                eve_information_rounds += 1;
            }
            if round_rng(config.seed, round, STREAM_SAMPLE).random::<f64>() < config.sample_fraction
            {
                sampled_count += 1;
                if error == Some(true) {
                    sampled_errors += 1;
                }
            }
        }

        records.push(RoundRecord {
            round,
            alice_class,
            alice_answer,
            eve_intercepted: intercept,
            eve_class,
            eve_answer,
            bob_class,
            bob_answer,
            sifted,
            error,
        });
    }

    let qber = if sampled_count == 0 {
        0.0
    } else {
        sampled_errors as f64 / sampled_count as f64
    };
    Ok((
        ProtocolStats {
            rounds: config.rounds,
            sifted_count,
            sampled_count,
            sampled_errors,
            qber,
            detected: qber > config.abort_threshold,
            eve_information_rounds,
        },
        records,
    ))
}

/// Runs the protocol over an arbitrary theory, after checking that the
/// configured classes are pairwise non-implied in the space's quotient.
pub fn run_protocol(
    theory: &Theory,
    space: &QuestionSpace,
    config: &ProtocolConfig,
) -> Result<(ProtocolStats, Vec<RoundRecord>), ProtocolError> {
    config.validate()?;
    let quotient = lift_quotient(space)?;
    for (i, a) in config.question_classes.iter().enumerate() {
        for b in &config.question_classes[i + 1..] {
            let (qa, qb) = match (quotient.index_of(a), quotient.index_of(b)) {
                (Some(qa), Some(qb)) => (qa, qb),
                _ => {
                    return Err(ProtocolError::BadConfig(format!(
                        "class `{}` missing from the space quotient",
                        if quotient.index_of(a).is_none() { a } else { b }
                    )))
                }
            };
            if quotient.leq(qa, qb) || quotient.leq(qb, qa) {
                return Err(ProtocolError::ImpliedClasses(a.clone(), b.clone()));
            }
        }
    }
    for class in &config.question_classes {
        theory.evaluate(&InquirySequence::of(vec![class.clone()]))?;
    }
    simulate(&|_, seq| theory.evaluate(seq), config)
}

/// The abstract detectability variant: a deterministic flip theory with a
/// fresh random answer state every round. No quantum mechanics involved.
pub fn flip_model_protocol(
    config: &ProtocolConfig,
) -> Result<(ProtocolStats, Vec<RoundRecord>), ProtocolError> {
    let classes = config.question_classes.clone();
    let seed = config.seed;
    simulate(
        &move |round, seq| {
            let mut rng = round_rng(seed, round, STREAM_STATE);
            let initial: BTreeMap<String, bool> =
                classes.iter().map(|c| (c.clone(), rng.random())).collect();
            let theory = Theory::DeterministicFlip {
                initial,
                implied: vec![],
            };
            theory.evaluate(seq)
        },
        config,
    )
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct DetectionPoint {
    pub rate: f64,
    pub mean_qber: f64,
    pub detection_probability: f64,
}

/// Sweeps the eavesdropping rate, estimating detection probability over
/// repeated protocol runs with derived seeds.
pub fn detection_curve(
    theory: &Theory,
    space: &QuestionSpace,
    base: &ProtocolConfig,
    rates: &[f64],
    repetitions: u32,
) -> Result<Vec<DetectionPoint>, ProtocolError> {
    let mut out = Vec::with_capacity(rates.len());
    for (i, &rate) in rates.iter().enumerate() {
        if !(0.0..=1.0).contains(&rate) {
            return Err(ProtocolError::BadConfig(format!("rate {rate} outside [0, 1]")));
        }
        let mut qber_sum = 0.0;
        let mut detections = 0u32;
        for rep in 0..repetitions {
            let mut config = base.clone();
            config.eve_rate = rate;
            config.eve_strategy = if rate == 0.0 {
                EveStrategy::None
            } else {
                base.eve_strategy.clone()
            };
            config.seed = derive_seed(base.seed, 100 + i as u64, rep as u64);
            let (stats, _) = run_protocol(theory, space, &config)?;
            qber_sum += stats.qber;
            if stats.detected {
                detections += 1;
            }
        }
        out.push(DetectionPoint {
            rate,
            mean_qber: qber_sum / repetitions as f64,
            detection_probability: detections as f64 / repetitions as f64,
        });
    }
    Ok(out)
}

/// CSV rendering of the round records.
pub fn records_to_csv(records: &[RoundRecord]) -> String {
    let mut out = String::from("round,alice_class,bob_class,sifted,error,eve_intercepted\n");
    for r in records {
        let error = match r.error {
            Some(e) => e.to_string(),
            None => String::new(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.round, r.alice_class, r.bob_class, r.sifted, error, r.eve_intercepted
        ));
    }
    out
}

/// Question space matching the qubit theory: MO2 contexts whose atom
/// classes are Z, X and their negations.
pub fn bb84_space(slots: u32) -> QuestionSpace {
    use lattice_core::{generate_family, Family, Lattice, OrthoMap};
    let mut sublattices = BTreeMap::new();
    let mut classes = BTreeMap::new();
    for slot in 0..slots {
        let (spec, ortho) = generate_family(Family::Mo(2)).expect("MO2 in bounds");
        let lattice = Lattice::build(&spec).expect("MO2 builds");
        let om = OrthoMap::from_pairs(&lattice, &ortho.unwrap()).expect("MO2 ortho");
        for (element, class) in [("a", "Z"), ("ap", "Z_not"), ("b", "X"), ("bp", "X_not")] {
            classes.insert(
                ("bb84".to_string(), slot, element.to_string()),
                class.to_string(),
            );
        }
        sublattices.insert(("bb84".to_string(), slot), (lattice, Some(om)));
    }
    QuestionSpace::new(sublattices, &classes).expect("bb84 space consistent")
}
