use std::collections::BTreeMap;

use serde::Serialize;

use crate::dist::{InquirySequence, JointDistribution};
use crate::error::TheoryError;
use crate::theory::Theory;
use crate::weight::Weight;

/// Default decision tolerance for float-backed probabilities.
pub const DECISION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct ContextualityDecision {
    pub noncontextual: bool,
    /// The recovered per-class assignment when the theory factorizes.
    pub assignment: Option<BTreeMap<String, BTreeMap<String, Weight>>>,
    /// A sequence no product assignment reproduces, when it does not.
    pub witness: Option<InquirySequence>,
    /// Worst pointwise deviation of the candidate product from the joint.
    pub max_deviation: f64,
}

/// Decides whether the theory's joints over the given domain derive from
/// independent per-class distributions.
///
/// If a product form exists, every coordinate marginal must equal the
/// class's distribution, so the candidate assignment is forced: read it off
/// the first occurrence of each class and verify it everywhere.
pub fn is_noncontextual(
    theory: &Theory,
    domain: &[InquirySequence],
    tolerance: f64,
) -> Result<ContextualityDecision, TheoryError> {
    let mut assignment: BTreeMap<String, BTreeMap<String, Weight>> = BTreeMap::new();
    let mut joints = Vec::with_capacity(domain.len());
    for seq in domain {
        let joint = theory.evaluate(seq)?;
        for (coord, class) in seq.classes.iter().enumerate() {
            if !assignment.contains_key(class) {
                let marginal = joint.marginal(&[coord]);
                let dist = marginal
                    .weights
                    .into_iter()
                    .map(|(tuple, w)| (tuple.into_iter().next().unwrap(), w))
                    .collect();
                assignment.insert(class.clone(), dist);
            }
        }
        joints.push(joint);
    }

    let product = Theory::Product {
        distributions: assignment.clone(),
    };
    let mut max_deviation = 0.0f64;
    let mut witness = None;
    for (seq, joint) in domain.iter().zip(&joints) {
        let predicted = product.evaluate(seq)?;
        let deviation = predicted.max_abs_difference(joint);
        max_deviation = max_deviation.max(deviation);
        if deviation > tolerance && witness.is_none() {
            witness = Some(seq.clone());
        }
    }

    Ok(ContextualityDecision {
        noncontextual: witness.is_none(),
        assignment: if witness.is_none() {
            Some(assignment)
        } else {
            None
        },
        witness,
        max_deviation,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct IsolationVerdict {
    pub isolated: bool,
    /// Offending coordinate pair and its agreement probability.
    pub witness: Option<(usize, usize, f64)>,
}

/// Checks the isolation condition on a sequence within one run: every pair
/// of same-class coordinates must agree with certainty.
pub fn is_isolated(
    theory: &Theory,
    seq: &InquirySequence,
    tolerance: f64,
) -> Result<IsolationVerdict, TheoryError> {
    let joint = theory.evaluate(seq)?;
    for i in 0..seq.len() {
        for j in (i + 1)..seq.len() {
            if seq.classes[i] != seq.classes[j] {
                continue;
            }
            let agree = joint.agreement_probability(i, j);
            if !agree.is_one_within(tolerance) {
                return Ok(IsolationVerdict {
                    isolated: false,
                    witness: Some((i, j, agree.to_f64())),
                });
            }
        }
    }
    Ok(IsolationVerdict {
        isolated: true,
        witness: None,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DisturbanceReport {
    pub insert_class: String,
    pub position: usize,
    /// Total-variation distance between the base joint and the marginal of
    /// the extended joint on the base coordinates.
    pub distance: f64,
    pub base: JointDistribution,
    pub modified: JointDistribution,
}

/// Measures how inserting one question changes the statistics of the
/// surrounding sequence.
pub fn disturbance_profile(
    theory: &Theory,
    base: &InquirySequence,
    insert_class: &str,
    position: usize,
) -> Result<DisturbanceReport, TheoryError> {
    if position > base.len() {
        return Err(TheoryError::BadSequence(format!(
            "insert position {position} beyond sequence length {}",
            base.len()
        )));
    }
    let before = theory.evaluate(base)?;
    let mut classes = base.classes.clone();
    classes.insert(position, insert_class.to_string());
    let extended = theory.evaluate(&InquirySequence { classes })?;
    let coords: Vec<usize> = (0..=base.len()).filter(|&i| i != position).collect();
    let modified = extended.marginal(&coords);
    Ok(DisturbanceReport {
        insert_class: insert_class.to_string(),
        position,
        distance: before.tv_distance(&modified),
        base: before,
        modified,
    })
}
