use std::collections::{BTreeMap, BTreeSet};

use question_space::Question;
use serde::{Deserialize, Serialize};

use crate::error::TheoryError;
use crate::weight::Weight;

/// Normalization tolerance for float-backed distributions; exact backends
/// must normalize exactly.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// A finite, nonempty set of answer labels. Binary {t, f} by default.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnswerSet {
    pub labels: Vec<String>,
}

impl AnswerSet {
    pub fn new<S: Into<String>>(labels: Vec<S>) -> Result<AnswerSet, TheoryError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(TheoryError::BadDistribution("empty answer set".into()));
        }
        let unique: BTreeSet<&String> = labels.iter().collect();
        if unique.len() != labels.len() {
            return Err(TheoryError::BadDistribution(
                "duplicate answer labels".into(),
            ));
        }
        Ok(AnswerSet { labels })
    }

    pub fn binary() -> AnswerSet {
        AnswerSet::new(vec!["t", "f"]).expect("binary set valid")
    }
}

/// An ordered list of question classes to inquire about, in order. Cross
/// checks against full Questions happen in [`InquirySequence::from_questions`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InquirySequence {
    pub classes: Vec<String>,
}

impl InquirySequence {
    pub fn of<S: Into<String>>(classes: Vec<S>) -> InquirySequence {
        InquirySequence {
            classes: classes.into_iter().map(Into::into).collect(),
        }
    }

    /// Builds from resolved questions, requiring a single run and
    /// nondecreasing slot order.
    pub fn from_questions(questions: &[Question]) -> Result<InquirySequence, TheoryError> {
        for w in questions.windows(2) {
            if w[0].run_id != w[1].run_id {
                return Err(TheoryError::BadSequence(
                    "questions span more than one run".into(),
                ));
            }
            if w[0].slot_id > w[1].slot_id {
                return Err(TheoryError::BadSequence(
                    "slot order decreases within the sequence".into(),
                ));
            }
        }
        Ok(InquirySequence {
            classes: questions.iter().map(|q| q.class_id.clone()).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// A joint distribution over answer tuples of fixed arity. Tuples with zero
/// weight may be omitted.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    pub arity: usize,
    pub weights: BTreeMap<Vec<String>, Weight>,
}

impl Serialize for JointDistribution {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        // answer tuples flatten to comma-joined keys for JSON output
        let weights: BTreeMap<String, &Weight> = self
            .weights
            .iter()
            .map(|(tuple, w)| (tuple.join(","), w))
            .collect();
        let mut s = serializer.serialize_struct("JointDistribution", 2)?;
        s.serialize_field("arity", &self.arity)?;
        s.serialize_field("weights", &weights)?;
        s.end()
    }
}

impl JointDistribution {
    pub fn new(
        arity: usize,
        weights: BTreeMap<Vec<String>, Weight>,
    ) -> Result<JointDistribution, TheoryError> {
        let mut total = Weight::zero();
        for (tuple, w) in &weights {
            if tuple.len() != arity {
                return Err(TheoryError::BadDistribution(format!(
                    "tuple {tuple:?} has arity {} instead of {arity}",
                    tuple.len()
                )));
            }
            if w.is_negative() {
                return Err(TheoryError::BadDistribution(format!(
                    "negative weight at {tuple:?}"
                )));
            }
            total = total.add(w);
        }
        if !total.is_one_within(NORMALIZATION_TOLERANCE) {
            return Err(TheoryError::BadDistribution(format!(
                "weights sum to {} instead of 1",
                total.to_f64()
            )));
        }
        Ok(JointDistribution { arity, weights })
    }

    pub fn point_mass(tuple: Vec<String>) -> JointDistribution {
        let arity = tuple.len();
        let mut weights = BTreeMap::new();
        weights.insert(tuple, Weight::one());
        JointDistribution { arity, weights }
    }

    pub fn prob_of(&self, tuple: &[String]) -> Weight {
        self.weights.get(tuple).cloned().unwrap_or_else(Weight::zero)
    }

    /// Marginal over the selected coordinates, in the order given.
    pub fn marginal(&self, coords: &[usize]) -> JointDistribution {
        let mut weights: BTreeMap<Vec<String>, Weight> = BTreeMap::new();
        for (tuple, w) in &self.weights {
            let key: Vec<String> = coords.iter().map(|&i| tuple[i].clone()).collect();
            let entry = weights.entry(key).or_insert_with(Weight::zero);
            *entry = entry.add(w);
        }
        JointDistribution {
            arity: coords.len(),
            weights,
        }
    }

    pub fn prefix_marginal(&self, len: usize) -> JointDistribution {
        let coords: Vec<usize> = (0..len).collect();
        self.marginal(&coords)
    }

    /// Probability that coordinates i and j carry the same answer.
    pub fn agreement_probability(&self, i: usize, j: usize) -> Weight {
        let mut total = Weight::zero();
        for (tuple, w) in &self.weights {
            if tuple[i] == tuple[j] {
                total = total.add(w);
            }
        }
        total
    }

    /// Total-variation distance; both distributions must share the arity.
    pub fn tv_distance(&self, other: &JointDistribution) -> f64 {
        assert_eq!(self.arity, other.arity, "arity mismatch in tv distance");
        let keys: BTreeSet<&Vec<String>> =
            self.weights.keys().chain(other.weights.keys()).collect();
        let mut total = 0.0;
        for key in keys {
            total += (self.prob_of(key).to_f64() - other.prob_of(key).to_f64()).abs();
        }
        total / 2.0
    }

    /// Largest absolute pointwise difference.
    pub fn max_abs_difference(&self, other: &JointDistribution) -> f64 {
        assert_eq!(self.arity, other.arity);
        let keys: BTreeSet<&Vec<String>> =
            self.weights.keys().chain(other.weights.keys()).collect();
        keys.into_iter()
            .map(|k| (self.prob_of(k).to_f64() - other.prob_of(k).to_f64()).abs())
            .fold(0.0, f64::max)
    }
}
