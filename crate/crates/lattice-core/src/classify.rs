use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::LatticeError;
use crate::lattice::Lattice;
use crate::ortho::{find_orthocomplementations, OrthoMap};

/// Largest lattice the exhaustive O(n^3) law scans accept.
pub const CLASSIFY_MAX_ELEMENTS: usize = 64;

/// Result of running the full taxonomy of exhaustive law checks.
///
/// Every `false` flag (other than `has_orthocomplementation`) carries a
/// concrete witness tuple under `counterexample_witnesses`, keyed by law
/// name. Witnesses are the lexicographically first violating tuple in input
/// element order.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub is_lattice: bool,
    pub is_bounded: bool,
    pub is_complemented: bool,
    pub has_orthocomplementation: bool,
    pub is_orthomodular: bool,
    pub is_distributive: bool,
    pub is_boolean: bool,
    pub is_atomic: bool,
    pub atoms: Vec<String>,
    pub counterexample_witnesses: BTreeMap<String, Vec<String>>,
}

/// Classifies a lattice along the taxonomy: complemented, orthocomplemented,
/// orthomodular, distributive, Boolean, atomic.
///
/// If `ortho` is given it is validated and used for the orthomodularity scan;
/// otherwise orthocomplementations are searched for, and orthomodularity
/// holds if any of them satisfies the orthomodular law.
pub fn classify(
    lattice: &Lattice,
    ortho: Option<&OrthoMap>,
) -> Result<ClassificationReport, LatticeError> {
    let n = lattice.len();
    if n > CLASSIFY_MAX_ELEMENTS {
        return Err(LatticeError::SizeBound(n, CLASSIFY_MAX_ELEMENTS));
    }
    if let Some(om) = ortho {
        // revalidate: classify must not trust the caller's map
        OrthoMap::new(lattice, (0..n).map(|a| om.apply(a)).collect())?;
    }

    let mut witnesses = BTreeMap::new();
    let ids = |xs: &[usize]| -> Vec<String> { xs.iter().map(|&i| lattice.id(i).to_string()).collect() };

    let mut is_complemented = true;
    'compl: for a in 0..n {
        if lattice.complements(a).is_empty() {
            is_complemented = false;
            witnesses.insert("complemented".to_string(), ids(&[a]));
            break 'compl;
        }
    }

    let mut is_distributive = true;
    'dist: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = lattice.meet(a, lattice.join(b, c));
                let rhs = lattice.join(lattice.meet(a, b), lattice.meet(a, c));
                if lhs != rhs {
                    is_distributive = false;
                    witnesses.insert("distributive".to_string(), ids(&[a, b, c]));
                    break 'dist;
                }
            }
        }
    }

    let found;
    let ortho_maps: Vec<&OrthoMap> = match ortho {
        Some(om) => vec![om],
        None => {
            found = if is_complemented {
                find_orthocomplementations(lattice)
            } else {
                Vec::new()
            };
            found.iter().collect()
        }
    };
    let has_orthocomplementation = !ortho_maps.is_empty();

    let mut is_orthomodular = false;
    if has_orthocomplementation {
        let mut witness: Option<Vec<usize>> = None;
        for om in &ortho_maps {
            match orthomodular_witness(lattice, om) {
                None => {
                    is_orthomodular = true;
                    witness = None;
                    break;
                }
                Some(w) => {
                    if witness.is_none() {
                        witness = Some(w);
                    }
                }
            }
        }
        if let Some(w) = witness {
            witnesses.insert("orthomodular".to_string(), ids(&w));
        }
    }

    let atoms = lattice.atoms();
    let mut is_atomic = true;
    'atomic: for a in 0..n {
        if a == lattice.bottom() {
            continue;
        }
        if !atoms.iter().any(|&at| lattice.leq(at, a)) {
            is_atomic = false;
            witnesses.insert("atomic".to_string(), ids(&[a]));
            break 'atomic;
        }
    }

    let is_boolean = is_distributive && is_complemented;

    Ok(ClassificationReport {
        is_lattice: true,
        is_bounded: true,
        is_complemented,
        has_orthocomplementation,
        is_orthomodular,
        is_distributive,
        is_boolean,
        is_atomic,
        atoms: ids(&atoms),
        counterexample_witnesses: witnesses,
    })
}

/// First ordered pair violating a <= b  =>  a v (a' ^ b) = b, if any.
fn orthomodular_witness(lattice: &Lattice, ortho: &OrthoMap) -> Option<Vec<usize>> {
    for a in 0..lattice.len() {
        for b in 0..lattice.len() {
            if lattice.leq(a, b)
                && lattice.join(a, lattice.meet(ortho.apply(a), b)) != b
            {
                return Some(vec![a, b]);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{generate_family, Family};

    fn classified(family: Family) -> ClassificationReport {
        let (spec, ortho) = generate_family(family).unwrap();
        let l = Lattice::build(&spec).unwrap();
        let om = ortho.map(|p| OrthoMap::from_pairs(&l, &p).unwrap());
        classify(&l, om.as_ref()).unwrap()
    }

    #[test]
    fn b3_with_set_complement_is_all_true() {
        let r = classified(Family::Boolean(3));
        assert!(r.is_lattice && r.is_bounded && r.is_complemented);
        assert!(r.has_orthocomplementation && r.is_orthomodular);
        assert!(r.is_distributive && r.is_boolean && r.is_atomic);
        assert_eq!(r.atoms.len(), 3);
        assert!(r.counterexample_witnesses.is_empty());
    }

    #[test]
    fn mo2_is_orthomodular_but_not_distributive() {
        let r = classified(Family::Mo(2));
        assert!(r.is_orthomodular);
        assert!(!r.is_distributive);
        assert!(!r.is_boolean);
        let w = r.counterexample_witnesses.get("distributive").unwrap();
        assert_eq!(w.len(), 3);
    }

    #[test]
    fn benzene_is_orthocomplemented_but_not_orthomodular() {
        let r = classified(Family::Benzene);
        assert!(r.has_orthocomplementation);
        assert!(!r.is_orthomodular);
        let w = r.counterexample_witnesses.get("orthomodular").unwrap();
        assert_eq!(w, &vec!["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn m3_and_n5_are_not_distributive() {
        assert!(!classified(Family::DiamondM3).is_distributive);
        assert!(!classified(Family::PentagonN5).is_distributive);
    }

    #[test]
    fn chain_mid_element_has_no_complement() {
        let r = classified(Family::Chain(3));
        assert!(!r.is_complemented);
        assert!(!r.has_orthocomplementation);
        assert_eq!(
            r.counterexample_witnesses.get("complemented").unwrap(),
            &vec!["c1".to_string()]
        );
    }

    #[test]
    fn singleton_is_boolean() {
        let r = classified(Family::Boolean(0));
        assert!(r.is_boolean);
        assert!(r.atoms.is_empty());
        assert!(r.is_atomic);
    }
}
