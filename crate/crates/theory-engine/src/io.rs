use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dist::JointDistribution;
use crate::error::TheoryError;
use crate::theory::{Outcome, Theory};
use crate::weight::Weight;

/// Complex entries are serialized as [re, im] pairs; matrices as nested
/// row-major arrays.
pub type ComplexEntry = [f64; 2];
pub type MatrixData = Vec<Vec<ComplexEntry>>;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TabulatedEntry {
    pub classes: Vec<String>,
    /// Answer tuples joined by commas, mapping to their weight.
    pub weights: BTreeMap<String, Weight>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuantumOutcomeData {
    pub answer: String,
    pub projector: MatrixData,
}

/// On-disk theory description, dispatched on `kind`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TheoryFile {
    Tabulated {
        tables: Vec<TabulatedEntry>,
    },
    Product {
        distributions: BTreeMap<String, BTreeMap<String, Weight>>,
    },
    Flip {
        initial: BTreeMap<String, String>,
        #[serde(default)]
        implied: Vec<(String, String)>,
    },
    Quantum {
        state: MatrixData,
        classes: BTreeMap<String, Vec<QuantumOutcomeData>>,
    },
}

fn parse_matrix(data: &MatrixData) -> Result<DMatrix<Complex64>, TheoryError> {
    let rows = data.len();
    if rows == 0 || data.iter().any(|r| r.len() != rows) {
        return Err(TheoryError::BadFile("matrix must be square".into()));
    }
    Ok(DMatrix::from_fn(rows, rows, |i, j| {
        Complex64::new(data[i][j][0], data[i][j][1])
    }))
}

pub fn matrix_data(m: &DMatrix<Complex64>) -> MatrixData {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

impl TheoryFile {
    /// Builds and validates the theory.
    pub fn build(&self) -> Result<Theory, TheoryError> {
        let theory = match self {
            TheoryFile::Tabulated { tables } => {
                let mut table = BTreeMap::new();
                for entry in tables {
                    let arity = entry.classes.len();
                    let mut weights = BTreeMap::new();
                    for (key, w) in &entry.weights {
                        let tuple: Vec<String> =
                            key.split(',').map(|s| s.trim().to_string()).collect();
                        weights.insert(tuple, w.clone());
                    }
                    table.insert(
                        entry.classes.clone(),
                        JointDistribution::new(arity, weights)?,
                    );
                }
                Theory::Tabulated { table }
            }
            TheoryFile::Product { distributions } => Theory::Product {
                distributions: distributions.clone(),
            },
            TheoryFile::Flip { initial, implied } => {
                let mut parsed = BTreeMap::new();
                for (class, answer) in initial {
                    let value = match answer.as_str() {
                        "t" => true,
                        "f" => false,
                        other => {
                            return Err(TheoryError::BadFile(format!(
                                "flip answers are t or f, got `{other}`"
                            )))
                        }
                    };
                    parsed.insert(class.clone(), value);
                }
                Theory::DeterministicFlip {
                    initial: parsed,
                    implied: implied.clone(),
                }
            }
            TheoryFile::Quantum { state, classes } => {
                let rho = parse_matrix(state)?;
                let mut parsed = BTreeMap::new();
                for (class, outcomes) in classes {
                    let outcomes = outcomes
                        .iter()
                        .map(|o| {
                            Ok(Outcome {
                                answer: o.answer.clone(),
                                projector: parse_matrix(&o.projector)?,
                            })
                        })
                        .collect::<Result<Vec<_>, TheoryError>>()?;
                    parsed.insert(class.clone(), outcomes);
                }
                Theory::Quantum {
                    rho,
                    classes: parsed,
                }
            }
        };
        theory.validate()?;
        Ok(theory)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::InquirySequence;

    #[test]
    fn quantum_file_round_trips_through_evaluation() {
        let text = r#"{
            "kind": "quantum",
            "state": [[[1,0],[0,0]],[[0,0],[0,0]]],
            "classes": {
                "Z": [
                    {"answer": "t", "projector": [[[1,0],[0,0]],[[0,0],[0,0]]]},
                    {"answer": "f", "projector": [[[0,0],[0,0]],[[0,0],[1,0]]]}
                ]
            }
        }"#;
        let file: TheoryFile = serde_json::from_str(text).unwrap();
        let theory = file.build().unwrap();
        let d = theory.evaluate(&InquirySequence::of(vec!["Z"])).unwrap();
        assert!((d.prob_of(&["t".to_string()]).to_f64() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn product_file_with_rational_weights() {
        let text = r#"{
            "kind": "product",
            "distributions": {"Z": {"t": "1/2", "f": "1/2"}}
        }"#;
        let file: TheoryFile = serde_json::from_str(text).unwrap();
        let theory = file.build().unwrap();
        let d = theory.evaluate(&InquirySequence::of(vec!["Z", "Z"])).unwrap();
        assert_eq!(
            d.prob_of(&["t".to_string(), "t".to_string()]),
            Weight::ratio(1, 4)
        );
    }

    #[test]
    fn flip_file_rejects_bad_answers() {
        let text = r#"{"kind": "flip", "initial": {"A": "x"}}"#;
        let file: TheoryFile = serde_json::from_str(text).unwrap();
        assert!(file.build().is_err());
    }

    #[test]
    fn tabulated_file_normalization_enforced() {
        let text = r#"{
            "kind": "tabulated",
            "tables": [{"classes": ["Z"], "weights": {"t": "1/3"}}]
        }"#;
        let file: TheoryFile = serde_json::from_str(text).unwrap();
        assert!(matches!(
            file.build(),
            Err(TheoryError::BadDistribution(_))
        ));
    }
}
