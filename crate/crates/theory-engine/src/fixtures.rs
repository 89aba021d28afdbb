//! Canonical model instances used across tests and the CLI.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::theory::{Outcome, Theory};
use crate::weight::Weight;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// |v><v| for a (not necessarily normalized) vector.
pub fn ket_projector(v: &[Complex64]) -> DMatrix<Complex64> {
    let n = v.len();
    let norm2: f64 = v.iter().map(|x| x.norm_sqr()).sum();
    DMatrix::from_fn(n, n, |i, j| v[i] * v[j].conj() / norm2)
}

/// Qubit model in state |0><0| with conjugate classes Z and X and the
/// tautological class Qt (identity projector on answer t).
pub fn qubit_zx_theory() -> Theory {
    let zero = vec![c(1.0, 0.0), c(0.0, 0.0)];
    let one = vec![c(0.0, 0.0), c(1.0, 0.0)];
    let plus = vec![c(1.0, 0.0), c(1.0, 0.0)];
    let minus = vec![c(1.0, 0.0), c(-1.0, 0.0)];

    let mut classes = BTreeMap::new();
    classes.insert(
        "Z".to_string(),
        vec![
            Outcome {
                answer: "t".to_string(),
                projector: ket_projector(&zero),
            },
            Outcome {
                answer: "f".to_string(),
                projector: ket_projector(&one),
            },
        ],
    );
    classes.insert(
        "X".to_string(),
        vec![
            Outcome {
                answer: "t".to_string(),
                projector: ket_projector(&plus),
            },
            Outcome {
                answer: "f".to_string(),
                projector: ket_projector(&minus),
            },
        ],
    );
    classes.insert(
        "Qt".to_string(),
        vec![
            Outcome {
                answer: "t".to_string(),
                projector: DMatrix::identity(2, 2),
            },
            Outcome {
                answer: "f".to_string(),
                projector: DMatrix::zeros(2, 2),
            },
        ],
    );

    Theory::Quantum {
        rho: ket_projector(&zero),
        classes,
    }
}

/// Product theory assigning the fair coin to each listed class.
pub fn uniform_product_theory(classes: &[&str]) -> Theory {
    let mut distributions = BTreeMap::new();
    for class in classes {
        let mut dist = BTreeMap::new();
        dist.insert("t".to_string(), Weight::ratio(1, 2));
        dist.insert("f".to_string(), Weight::ratio(1, 2));
        distributions.insert(class.to_string(), dist);
    }
    Theory::Product { distributions }
}

/// Two-class deterministic flip theory, the abstract detectability model.
pub fn two_class_flip_theory() -> Theory {
    Theory::DeterministicFlip {
        initial: [("A".to_string(), true), ("B".to_string(), true)].into(),
        implied: vec![],
    }
}
