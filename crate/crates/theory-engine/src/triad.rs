use serde::Serialize;

/// Outcome of the exhaustive search over deterministic binary answer
/// assignments for the alternating two-class sequence.
#[derive(Debug, Clone, Serialize)]
pub struct TriadReport {
    pub length: usize,
    pub contradiction: bool,
    /// A satisfying answer assignment when one exists.
    pub consistent_model: Option<Vec<bool>>,
    /// The forced chain exhibited when none exists.
    pub forced_chain: Option<String>,
}

/// Checks whether any deterministic binary theory obeying the interaction
/// assumption survives the alternating sequence Q1, Q2, Q3, ... with classes
/// A, B, A, B, ...
///
/// The interaction assumption demands that between two inquiries of the same
/// class with a non-implied inquiry in between, the answer must have
/// changed; with two answer values and three same-class positions this is a
/// pigeonhole contradiction (A1, A3, A5 pairwise distinct is impossible),
/// while the flip rule itself forces A5 = not(not(A1)) = A1.
pub fn inconsistent_triad(num_classes: usize, length: usize) -> TriadReport {
    assert!(num_classes >= 2, "need at least two classes");
    assert!(length >= 3, "the argument needs at least three inquiries");

    // classes alternate between the first two; extra classes are idle
    let class_of = |i: usize| i % 2;

    // all ordered same-class pairs separated by a non-implied inquiry
    let mut constraints = Vec::new();
    for i in 0..length {
        for j in (i + 1)..length {
            if class_of(i) != class_of(j) {
                continue;
            }
            let disturbed = (i + 1..j).any(|k| class_of(k) != class_of(i));
            if disturbed {
                constraints.push((i, j));
            }
        }
    }

    let mut consistent_model = None;
    for mask in 0u64..(1 << length) {
        let answers: Vec<bool> = (0..length).map(|i| mask & (1 << i) != 0).collect();
        if constraints.iter().all(|&(i, j)| answers[i] != answers[j]) {
            consistent_model = Some(answers);
            break;
        }
    }

    let contradiction = consistent_model.is_none();
    TriadReport {
        length,
        contradiction,
        consistent_model,
        forced_chain: if contradiction {
            Some(
                "A5 = not(A3) = not(not(A1)) = A1, yet A5 must differ from A1".to_string(),
            )
        } else {
            None
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::InquirySequence;
    use crate::fixtures::two_class_flip_theory;

    #[test]
    fn length_five_is_contradictory() {
        let report = inconsistent_triad(2, 5);
        assert!(report.contradiction);
        assert!(report.consistent_model.is_none());
    }

    #[test]
    fn length_three_admits_a_model() {
        let report = inconsistent_triad(2, 3);
        assert!(!report.contradiction);
        let model = report.consistent_model.unwrap();
        assert_ne!(model[0], model[2]);
    }

    #[test]
    fn odd_extensions_stay_contradictory() {
        for length in [5, 7, 9, 11] {
            assert!(inconsistent_triad(2, length).contradiction, "length {length}");
        }
    }

    #[test]
    fn flip_theory_realizes_the_forced_chain() {
        // the concrete flip model produces A5 = A1, the chain the pigeonhole
        // argument says cannot satisfy the interaction assumption
        let theory = two_class_flip_theory();
        let d = theory
            .evaluate(&InquirySequence::of(vec!["A", "B", "A", "B", "A"]))
            .unwrap();
        let (tuple, _) = d.weights.iter().next().unwrap();
        assert_eq!(tuple[0], tuple[4], "A5 equals A1 under the flip rule");
        assert_ne!(tuple[0], tuple[2], "A3 is the negation of A1");
    }
}
