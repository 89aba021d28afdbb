use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::LatticeError;
use crate::lattice::{Lattice, PosetSpec};

/// Birkhoff representation of a finite distributive lattice: the poset of
/// join-irreducibles together with the verified isomorphism onto its
/// down-set lattice.
#[derive(Debug, Clone, Serialize)]
pub struct BirkhoffRepresentation {
    /// Induced subposet of join-irreducible elements (cover relation).
    pub irreducibles: PosetSpec,
    /// element id -> the down-set of join-irreducibles below it.
    pub isomorphism: Vec<(String, Vec<String>)>,
}

/// Computes the join-irreducibles and the order-isomorphism onto the down-set
/// lattice, verifying the isomorphism element by element.
pub fn birkhoff_representation(
    lattice: &Lattice,
) -> Result<BirkhoffRepresentation, LatticeError> {
    // distributivity is a precondition; scan for a witness first
    for a in 0..lattice.len() {
        for b in 0..lattice.len() {
            for c in 0..lattice.len() {
                let lhs = lattice.meet(a, lattice.join(b, c));
                let rhs = lattice.join(lattice.meet(a, b), lattice.meet(a, c));
                if lhs != rhs {
                    return Err(LatticeError::NotDistributive {
                        witness: (
                            lattice.id(a).to_string(),
                            lattice.id(b).to_string(),
                            lattice.id(c).to_string(),
                        ),
                    });
                }
            }
        }
    }

    let n = lattice.len();
    let irr: Vec<usize> = (0..n)
        .filter(|&e| e != lattice.bottom())
        .filter(|&e| {
            !(0..n).any(|a| {
                (0..n).any(|b| lattice.lt(a, e) && lattice.lt(b, e) && lattice.join(a, b) == e)
            })
        })
        .collect();

    // map each element to its down-set of irreducibles
    let down_set = |x: usize| -> BTreeSet<usize> {
        irr.iter().copied().filter(|&j| lattice.leq(j, x)).collect()
    };
    let images: Vec<BTreeSet<usize>> = (0..n).map(down_set).collect();

    // verify: injective, order-isomorphic, and onto all down-closed subsets
    for a in 0..n {
        for b in 0..n {
            if (images[a].is_subset(&images[b])) != lattice.leq(a, b) {
                // cannot happen in a distributive lattice; keep the guard
                return Err(LatticeError::NotDistributive {
                    witness: (
                        lattice.id(a).to_string(),
                        lattice.id(b).to_string(),
                        lattice.id(b).to_string(),
                    ),
                });
            }
        }
    }
    let image_set: BTreeSet<&BTreeSet<usize>> = images.iter().collect();
    assert_eq!(image_set.len(), n, "down-set map must be injective");
    for ds in enumerate_down_sets(lattice, &irr) {
        assert!(
            image_set.contains(&ds),
            "down-set map must be onto the down-set lattice"
        );
    }

    let id = |i: usize| lattice.id(i).to_string();
    let mut irr_covers = Vec::new();
    for &a in &irr {
        for &b in &irr {
            if lattice.lt(a, b) && !irr.iter().any(|&x| lattice.lt(a, x) && lattice.lt(x, b)) {
                irr_covers.push((id(a), id(b)));
            }
        }
    }

    Ok(BirkhoffRepresentation {
        irreducibles: PosetSpec {
            elements: irr.iter().map(|&i| id(i)).collect(),
            covers: irr_covers,
        },
        isomorphism: (0..n)
            .map(|x| (id(x), images[x].iter().map(|&j| id(j)).collect()))
            .collect(),
    })
}

/// All down-closed subsets of the induced irreducible subposet.
fn enumerate_down_sets(lattice: &Lattice, irr: &[usize]) -> Vec<BTreeSet<usize>> {
    let mut out: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    out.insert(BTreeSet::new());
    let mut frontier = vec![BTreeSet::new()];
    while let Some(ds) = frontier.pop() {
        for &j in irr {
            if ds.contains(&j) {
                continue;
            }
            // j can be added if all irreducibles strictly below it are in
            if irr
                .iter()
                .all(|&k| !lattice.lt(k, j) || ds.contains(&k))
            {
                let mut next = ds.clone();
                next.insert(j);
                if out.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
    }
    out.into_iter().collect()
}
