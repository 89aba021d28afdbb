use std::collections::BTreeMap;

use crate::error::LatticeError;
use crate::lattice::Lattice;

/// An orthocomplementation on a lattice: involutive, order-reversing,
/// complement-law-satisfying total map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoMap {
    map: Vec<usize>,
}

impl OrthoMap {
    /// Validates the three laws and returns the map, or the first violated
    /// law with a witness.
    pub fn new(lattice: &Lattice, map: Vec<usize>) -> Result<OrthoMap, LatticeError> {
        assert_eq!(map.len(), lattice.len());
        let witness = |ids: &[usize]| ids.iter().map(|&i| lattice.id(i).to_string()).collect();
        for a in 0..lattice.len() {
            if lattice.meet(a, map[a]) != lattice.bottom() || lattice.join(a, map[a]) != lattice.top()
            {
                return Err(LatticeError::InvalidOrthoMap {
                    law: "complement".into(),
                    witness: witness(&[a, map[a]]),
                });
            }
            if map[map[a]] != a {
                return Err(LatticeError::InvalidOrthoMap {
                    law: "involution".into(),
                    witness: witness(&[a, map[a], map[map[a]]]),
                });
            }
        }
        for a in 0..lattice.len() {
            for b in 0..lattice.len() {
                if lattice.leq(a, b) && !lattice.leq(map[b], map[a]) {
                    return Err(LatticeError::InvalidOrthoMap {
                        law: "order-reversing".into(),
                        witness: witness(&[a, b]),
                    });
                }
            }
        }
        Ok(OrthoMap { map })
    }

    pub fn from_pairs(
        lattice: &Lattice,
        pairs: &BTreeMap<String, String>,
    ) -> Result<OrthoMap, LatticeError> {
        let mut map = vec![usize::MAX; lattice.len()];
        for (a, b) in pairs {
            let i = lattice
                .index_of(a)
                .ok_or_else(|| LatticeError::UnknownElement(a.clone()))?;
            let j = lattice
                .index_of(b)
                .ok_or_else(|| LatticeError::UnknownElement(b.clone()))?;
            map[i] = j;
        }
        // top/bottom may be left implicit
        if map[lattice.top()] == usize::MAX {
            map[lattice.top()] = lattice.bottom();
        }
        if map[lattice.bottom()] == usize::MAX {
            map[lattice.bottom()] = lattice.top();
        }
        if let Some(missing) = map.iter().position(|&x| x == usize::MAX) {
            return Err(LatticeError::InvalidOrthoMap {
                law: "totality".into(),
                witness: vec![lattice.id(missing).to_string()],
            });
        }
        OrthoMap::new(lattice, map)
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn to_pairs(&self, lattice: &Lattice) -> BTreeMap<String, String> {
        self.map
            .iter()
            .enumerate()
            .map(|(a, &b)| (lattice.id(a).to_string(), lattice.id(b).to_string()))
            .collect()
    }
}

/// Enumerates every orthocomplementation of a bounded, complemented lattice
/// by backtracking over complement choices per element.
pub fn find_orthocomplementations(lattice: &Lattice) -> Vec<OrthoMap> {
    let n = lattice.len();
    let mut map = vec![usize::MAX; n];
    map[lattice.top()] = lattice.bottom();
    map[lattice.bottom()] = lattice.top();
    if lattice.top() == lattice.bottom() {
        map[lattice.top()] = lattice.top();
    }
    let mut out = Vec::new();
    assign(lattice, &mut map, &mut out);
    out
}

fn assign(lattice: &Lattice, map: &mut Vec<usize>, out: &mut Vec<OrthoMap>) {
    let Some(a) = map.iter().position(|&x| x == usize::MAX) else {
        if let Ok(om) = OrthoMap::new(lattice, map.clone()) {
            out.push(om);
        }
        return;
    };
    for b in lattice.complements(a) {
        // keep the pairing involutive
        if map[b] != usize::MAX && map[b] != a {
            continue;
        }
        let saved = map[b];
        map[a] = b;
        map[b] = a;
        // order-reversal against already-assigned elements
        let consistent = (0..lattice.len()).all(|x| {
            map[x] == usize::MAX
                || ((!lattice.leq(a, x) || lattice.leq(map[x], b))
                    && (!lattice.leq(x, a) || lattice.leq(b, map[x])))
        });
        if consistent {
            assign(lattice, map, out);
        }
        map[a] = usize::MAX;
        if b != a {
            map[b] = saved;
        }
    }
}

/// A total {0,1}-valued map preserving joins, meets, bounds, and
/// orthocomplement. Existence characterizes classical valuations.
pub type TwoValuedMap = Vec<bool>;

/// Exhaustively enumerates all two-valued homomorphisms of an
/// orthocomplemented lattice, with constraint-propagating backtracking.
pub fn two_valued_homomorphisms(lattice: &Lattice, ortho: &OrthoMap) -> Vec<TwoValuedMap> {
    let n = lattice.len();
    let mut h: Vec<Option<bool>> = vec![None; n];
    h[lattice.bottom()] = Some(false);
    h[lattice.top()] = Some(true);
    let mut out = Vec::new();
    if lattice.top() == lattice.bottom() {
        return out; // cannot map one element to both 0 and 1
    }
    search(lattice, ortho, &mut h, &mut out);
    out
}

fn consistent_prefix(lattice: &Lattice, ortho: &OrthoMap, h: &[Option<bool>]) -> bool {
    let n = lattice.len();
    for a in 0..n {
        let Some(ha) = h[a] else { continue };
        if let Some(hc) = h[ortho.apply(a)] {
            if hc != !ha {
                return false;
            }
        }
        for b in 0..n {
            let Some(hb) = h[b] else { continue };
            if lattice.leq(a, b) && ha && !hb {
                return false;
            }
            if let Some(hj) = h[lattice.join(a, b)] {
                if hj != (ha || hb) {
                    return false;
                }
            }
            if let Some(hm) = h[lattice.meet(a, b)] {
                if hm != (ha && hb) {
                    return false;
                }
            }
        }
    }
    true
}

fn search(
    lattice: &Lattice,
    ortho: &OrthoMap,
    h: &mut Vec<Option<bool>>,
    out: &mut Vec<TwoValuedMap>,
) {
    if !consistent_prefix(lattice, ortho, h) {
        return;
    }
    let Some(a) = h.iter().position(Option::is_none) else {
        out.push(h.iter().map(|v| v.unwrap()).collect());
        return;
    };
    for value in [false, true] {
        h[a] = Some(value);
        let partner = ortho.apply(a);
        let saved = h[partner];
        h[partner] = Some(!value);
        search(lattice, ortho, h, out);
        h[partner] = saved;
        h[a] = None;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{generate_family, Family};

    fn built(family: Family) -> (Lattice, Option<OrthoMap>) {
        let (spec, ortho) = generate_family(family).unwrap();
        let l = Lattice::build(&spec).unwrap();
        let om = ortho.map(|p| OrthoMap::from_pairs(&l, &p).unwrap());
        (l, om)
    }

    #[test]
    fn b2_has_exactly_one_orthocomplementation() {
        let (l, _) = built(Family::Boolean(2));
        let maps = find_orthocomplementations(&l);
        assert_eq!(maps.len(), 1);
        let a = l.index_of("a").unwrap();
        let b = l.index_of("b").unwrap();
        assert_eq!(maps[0].apply(a), b);
    }

    #[test]
    fn chain_has_no_orthocomplementation() {
        let (l, _) = built(Family::Chain(3));
        assert!(find_orthocomplementations(&l).is_empty());
    }

    #[test]
    fn mo2_enumeration_contains_canonical_map() {
        let (l, om) = built(Family::Mo(2));
        let canonical = om.unwrap();
        let maps = find_orthocomplementations(&l);
        assert!(maps.contains(&canonical));
    }

    #[test]
    fn b3_has_three_homomorphisms() {
        let (l, om) = built(Family::Boolean(3));
        let homs = two_valued_homomorphisms(&l, &om.unwrap());
        assert_eq!(homs.len(), 3);
        // each hom corresponds to one atom sent to true
        for h in &homs {
            let true_atoms: Vec<_> = l.atoms().into_iter().filter(|&a| h[a]).collect();
            assert_eq!(true_atoms.len(), 1);
        }
    }

    #[test]
    fn b2_has_two_homomorphisms() {
        let (l, om) = built(Family::Boolean(2));
        assert_eq!(two_valued_homomorphisms(&l, &om.unwrap()).len(), 2);
    }

    #[test]
    fn mo2_has_no_homomorphism() {
        let (l, om) = built(Family::Mo(2));
        assert!(two_valued_homomorphisms(&l, &om.unwrap()).is_empty());
    }

    #[test]
    fn invalid_ortho_rejected_with_law() {
        let (l, _) = built(Family::Boolean(2));
        // identity map is not a complement map
        let err = OrthoMap::new(&l, (0..l.len()).collect()).unwrap_err();
        match err {
            LatticeError::InvalidOrthoMap { law, .. } => assert_eq!(law, "complement"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
