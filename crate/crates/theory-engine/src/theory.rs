use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::dist::{InquirySequence, JointDistribution, NORMALIZATION_TOLERANCE};
use crate::error::TheoryError;
use crate::weight::Weight;

/// A per-class distribution over answer labels.
pub type ClassDistribution = BTreeMap<String, Weight>;

/// One projective outcome of a quantum question class.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub answer: String,
    pub projector: DMatrix<Complex64>,
}

/// A theory maps ordered question sequences to joint answer distributions.
#[derive(Debug, Clone)]
pub enum Theory {
    /// Explicit finite table keyed by the class sequence.
    Tabulated {
        table: BTreeMap<Vec<String>, JointDistribution>,
    },
    /// Independent per-class distributions; the joint is their product.
    Product {
        distributions: BTreeMap<String, ClassDistribution>,
    },
    /// Deterministic binary answers; inquiring a class flips the stored
    /// answer of every other class unless the pair is declared implied.
    DeterministicFlip {
        initial: BTreeMap<String, bool>,
        /// (asked, untouched): asking `asked` does not disturb `untouched`.
        implied: Vec<(String, String)>,
    },
    /// Initial density matrix plus per-class projective decompositions,
    /// evaluated by the sequential Born rule.
    Quantum {
        rho: DMatrix<Complex64>,
        classes: BTreeMap<String, Vec<Outcome>>,
    },
}

impl Theory {
    /// Evaluates the sequence to its joint answer distribution. Pure: the
    /// same sequence always yields the identical distribution.
    pub fn evaluate(&self, seq: &InquirySequence) -> Result<JointDistribution, TheoryError> {
        match self {
            Theory::Tabulated { table } => table
                .get(&seq.classes)
                .cloned()
                .ok_or_else(|| TheoryError::UnknownSequence(seq.classes.clone())),
            Theory::Product { distributions } => {
                let mut weights: BTreeMap<Vec<String>, Weight> = BTreeMap::new();
                weights.insert(Vec::new(), Weight::one());
                for class in &seq.classes {
                    let dist = distributions
                        .get(class)
                        .ok_or_else(|| TheoryError::UnknownClass(class.clone()))?;
                    let mut next = BTreeMap::new();
                    for (tuple, w) in &weights {
                        for (answer, p) in dist {
                            let mut t = tuple.clone();
                            t.push(answer.clone());
                            next.insert(t, w.mul(p));
                        }
                    }
                    weights = next;
                }
                JointDistribution::new(seq.len(), weights)
            }
            Theory::DeterministicFlip { initial, implied } => {
                let mut state = initial.clone();
                let mut answers = Vec::with_capacity(seq.len());
                for class in &seq.classes {
                    let current = *state
                        .get(class)
                        .ok_or_else(|| TheoryError::UnknownClass(class.clone()))?;
                    answers.push(if current { "t" } else { "f" }.to_string());
                    for (other, value) in state.iter_mut() {
                        if other == class {
                            continue;
                        }
                        let untouched = implied
                            .iter()
                            .any(|(asked, spared)| asked == class && spared == other);
                        if !untouched {
                            *value = !*value;
                        }
                    }
                }
                Ok(JointDistribution::point_mass(answers))
            }
            Theory::Quantum { rho, classes } => {
                let decompositions: Vec<&Vec<Outcome>> = seq
                    .classes
                    .iter()
                    .map(|class| {
                        classes
                            .get(class)
                            .ok_or_else(|| TheoryError::UnknownClass(class.clone()))
                    })
                    .collect::<Result<_, _>>()?;
                let mut weights = BTreeMap::new();
                luders_branches(rho, &decompositions, &mut Vec::new(), &mut weights);
                JointDistribution::new(seq.len(), weights)
            }
        }
    }

    /// Validates the internal consistency of the variant's data.
    pub fn validate(&self) -> Result<(), TheoryError> {
        match self {
            Theory::Tabulated { table } => {
                for dist in table.values() {
                    JointDistribution::new(dist.arity, dist.weights.clone())?;
                }
                Ok(())
            }
            Theory::Product { distributions } => {
                for (class, dist) in distributions {
                    let mut total = Weight::zero();
                    for w in dist.values() {
                        if w.is_negative() {
                            return Err(TheoryError::BadDistribution(format!(
                                "negative weight in class `{class}`"
                            )));
                        }
                        total = total.add(w);
                    }
                    if !total.is_one_within(NORMALIZATION_TOLERANCE) {
                        return Err(TheoryError::BadDistribution(format!(
                            "class `{class}` weights sum to {}",
                            total.to_f64()
                        )));
                    }
                }
                Ok(())
            }
            Theory::DeterministicFlip { .. } => Ok(()),
            Theory::Quantum { rho, classes } => {
                validate_density_matrix(rho)?;
                let n = rho.nrows();
                for (class, outcomes) in classes {
                    let mut sum = DMatrix::<Complex64>::zeros(n, n);
                    for outcome in outcomes {
                        let p = &outcome.projector;
                        if p.nrows() != n || p.ncols() != n {
                            return Err(TheoryError::InvalidState(format!(
                                "projector shape mismatch in class `{class}`"
                            )));
                        }
                        if ((p * p) - p).iter().any(|c| c.norm() > 1e-9) {
                            return Err(TheoryError::InvalidState(format!(
                                "non-idempotent projector in class `{class}`"
                            )));
                        }
                        if (p.adjoint() - p).iter().any(|c| c.norm() > 1e-9) {
                            return Err(TheoryError::InvalidState(format!(
                                "non-Hermitian projector in class `{class}`"
                            )));
                        }
                        sum += p;
                    }
                    let identity = DMatrix::<Complex64>::identity(n, n);
                    if (&sum - identity).iter().any(|c| c.norm() > 1e-9) {
                        return Err(TheoryError::InvalidState(format!(
                            "projectors of class `{class}` do not resolve the identity"
                        )));
                    }
                }
                Ok(())
            }
        }
    }
}

/// Walks every answer tuple, carrying the unnormalized post-measurement
/// state; the tuple weight is the trace at the end of the branch.
fn luders_branches(
    rho: &DMatrix<Complex64>,
    remaining: &[&Vec<Outcome>],
    prefix: &mut Vec<String>,
    out: &mut BTreeMap<Vec<String>, Weight>,
) {
    let Some((head, tail)) = remaining.split_first() else {
        let trace = rho.trace().re;
        // clamp tiny negative round-off so weights stay admissible
        out.insert(prefix.clone(), Weight::Approx(trace.max(0.0)));
        return;
    };
    for outcome in head.iter() {
        let branch = &outcome.projector * rho * &outcome.projector;
        prefix.push(outcome.answer.clone());
        luders_branches(&branch, tail, prefix, out);
        prefix.pop();
    }
}

pub(crate) fn validate_density_matrix(rho: &DMatrix<Complex64>) -> Result<(), TheoryError> {
    if rho.nrows() != rho.ncols() {
        return Err(TheoryError::InvalidState("state matrix not square".into()));
    }
    if (rho.adjoint() - rho).iter().any(|c| c.norm() > 1e-9) {
        return Err(TheoryError::InvalidState("state not Hermitian".into()));
    }
    if (rho.trace().re - 1.0).abs() > 1e-9 || rho.trace().im.abs() > 1e-9 {
        return Err(TheoryError::InvalidState("state trace is not 1".into()));
    }
    let eigen = rho.clone().symmetric_eigen();
    if eigen.eigenvalues.iter().any(|&l| l < -1e-9) {
        return Err(TheoryError::InvalidState(
            "state not positive semidefinite".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{qubit_zx_theory, uniform_product_theory};

    #[test]
    fn eigenstate_z_is_certain() {
        let theory = qubit_zx_theory();
        let d = theory.evaluate(&InquirySequence::of(vec!["Z"])).unwrap();
        assert!((d.prob_of(&["t".to_string()]).to_f64() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn conjugate_x_is_fair() {
        let theory = qubit_zx_theory();
        let d = theory.evaluate(&InquirySequence::of(vec!["X"])).unwrap();
        assert!((d.prob_of(&["t".to_string()]).to_f64() - 0.5).abs() < 1e-12);
        assert!((d.prob_of(&["f".to_string()]).to_f64() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn zxz_halves_the_agreement() {
        let theory = qubit_zx_theory();
        let d = theory
            .evaluate(&InquirySequence::of(vec!["Z", "X", "Z"]))
            .unwrap();
        assert!((d.agreement_probability(0, 2).to_f64() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn flip_theory_is_a_point_mass() {
        let theory = Theory::DeterministicFlip {
            initial: [("A".to_string(), true), ("B".to_string(), false)].into(),
            implied: vec![],
        };
        let d = theory
            .evaluate(&InquirySequence::of(vec!["A", "B", "A"]))
            .unwrap();
        assert_eq!(d.weights.len(), 1);
        // B's inquiry flips A: the third answer negates the first
        let tuple: Vec<String> = ["t", "t", "f"].iter().map(|s| s.to_string()).collect();
        assert!(d.prob_of(&tuple).is_one_within(0.0));
    }

    #[test]
    fn product_theory_multiplies() {
        let theory = uniform_product_theory(&["Z", "X"]);
        let d = theory
            .evaluate(&InquirySequence::of(vec!["Z", "X"]))
            .unwrap();
        for w in d.weights.values() {
            assert_eq!(w.clone(), Weight::ratio(1, 4));
        }
    }

    #[test]
    fn quantum_validation_rejects_bad_resolutions() {
        let Theory::Quantum { rho, mut classes } = qubit_zx_theory() else {
            unreachable!()
        };
        classes.get_mut("Z").unwrap().pop();
        let theory = Theory::Quantum { rho, classes };
        assert!(matches!(
            theory.validate(),
            Err(TheoryError::InvalidState(_))
        ));
    }
}
