use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{LatticeError, LatticeFailure};

/// Elements are referred to by opaque string identifiers in specs and by
/// dense indices inside a built [`Lattice`].
pub type ElementId = String;

/// A finite poset given by its cover (Hasse) relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetSpec {
    pub elements: Vec<ElementId>,
    /// (lower, upper) pairs; the full order is the reflexive-transitive closure.
    pub covers: Vec<(ElementId, ElementId)>,
}

impl PosetSpec {
    pub fn new<S: Into<String>>(elements: Vec<S>, covers: Vec<(S, S)>) -> Self {
        PosetSpec {
            elements: elements.into_iter().map(Into::into).collect(),
            covers: covers
                .into_iter()
                .map(|(a, b)| (a.into(), b.into()))
                .collect(),
        }
    }
}

/// A finite bounded lattice with total join/meet tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    elements: Vec<ElementId>,
    index: BTreeMap<ElementId, usize>,
    /// Row-major n*n reflexive-transitive order: leq[a*n+b] == (a <= b).
    leq: Vec<bool>,
    join: Vec<usize>,
    meet: Vec<usize>,
    top: usize,
    bottom: usize,
}

impl Lattice {
    /// Builds a lattice from a cover-relation spec, computing the transitive
    /// closure and the full join/meet tables. Fails on the first pair lacking
    /// a unique least upper bound or greatest lower bound.
    pub fn build(spec: &PosetSpec) -> Result<Lattice, LatticeError> {
        let n = spec.elements.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut index = BTreeMap::new();
        for (i, id) in spec.elements.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(LatticeError::DuplicateElement(id.clone()));
            }
        }

        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (lo, hi) in &spec.covers {
            let &i = index
                .get(lo)
                .ok_or_else(|| LatticeError::UnknownElement(lo.clone()))?;
            let &j = index
                .get(hi)
                .ok_or_else(|| LatticeError::UnknownElement(hi.clone()))?;
            leq[i * n + j] = true;
        }
        // Floyd-Warshall closure of the cover relation.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        // Antisymmetry: a <= b <= a with a != b means the covers were cyclic.
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i * n + j] && leq[j * n + i] {
                    return Err(LatticeError::CyclicCovers);
                }
            }
        }

        let le = |a: usize, b: usize| leq[a * n + b];
        let mut join = vec![0usize; n * n];
        let mut meet = vec![0usize; n * n];
        for a in 0..n {
            for b in a..n {
                let uppers: Vec<usize> = (0..n).filter(|&u| le(a, u) && le(b, u)).collect();
                let j = unique_extremum(&uppers, |x, y| le(x, y)).ok_or_else(|| {
                    LatticeError::NotALattice {
                        pair: (spec.elements[a].clone(), spec.elements[b].clone()),
                        reason: if uppers.is_empty() {
                            LatticeFailure::NoUpperBound
                        } else {
                            LatticeFailure::NoLeastUpperBound
                        },
                    }
                })?;
                let lowers: Vec<usize> = (0..n).filter(|&l| le(l, a) && le(l, b)).collect();
                let m = unique_extremum(&lowers, |x, y| le(y, x)).ok_or_else(|| {
                    LatticeError::NotALattice {
                        pair: (spec.elements[a].clone(), spec.elements[b].clone()),
                        reason: if lowers.is_empty() {
                            LatticeFailure::NoLowerBound
                        } else {
                            LatticeFailure::NoGreatestLowerBound
                        },
                    }
                })?;
                join[a * n + b] = j;
                join[b * n + a] = j;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
            }
        }

        // A finite lattice is bounded: fold join/meet over all elements.
        let top = (1..n).fold(0, |acc, i| join[acc * n + i]);
        let bottom = (1..n).fold(0, |acc, i| meet[acc * n + i]);

        Ok(Lattice {
            elements: spec.elements.clone(),
            index,
            leq,
            join,
            meet,
            top,
            bottom,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> &[ElementId] {
        &self.elements
    }

    pub fn id(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    /// Atoms: elements covering bottom.
    pub fn atoms(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| a != self.bottom)
            .filter(|&a| !(0..self.len()).any(|x| self.lt(self.bottom, x) && self.lt(x, a)))
            .collect()
    }

    /// Elements covered by `a` (maximal strictly-smaller elements).
    pub fn lower_covers(&self, a: usize) -> Vec<usize> {
        let below: Vec<usize> = (0..self.len()).filter(|&x| self.lt(x, a)).collect();
        below
            .iter()
            .copied()
            .filter(|&x| !below.iter().any(|&y| self.lt(x, y)))
            .collect()
    }

    /// Complements of `a`: elements b with a ∧ b = 0 and a ∨ b = 1.
    pub fn complements(&self, a: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&b| self.meet(a, b) == self.bottom && self.join(a, b) == self.top)
            .collect()
    }

    /// Cover relation recovered from the order, in input element order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in 0..self.len() {
                if self.lt(a, b) && !(0..self.len()).any(|x| self.lt(a, x) && self.lt(x, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Number of elements in the longest chain of the lattice.
    pub fn height(&self) -> usize {
        let n = self.len();
        // longest path in the strict-order DAG, by descending DP
        let mut memo = vec![0usize; n];
        let mut order: Vec<usize> = (0..n).collect();
        // process elements from top down: sort by number of elements above
        order.sort_by_key(|&a| (0..n).filter(|&b| self.lt(a, b)).count());
        for &a in &order {
            let best = (0..n)
                .filter(|&b| self.lt(a, b))
                .map(|b| memo[b])
                .max()
                .unwrap_or(0);
            memo[a] = best + 1;
        }
        memo.into_iter().max().unwrap_or(0)
    }

    pub fn to_spec(&self) -> PosetSpec {
        PosetSpec {
            elements: self.elements.clone(),
            covers: self
                .covers()
                .into_iter()
                .map(|(a, b)| (self.elements[a].clone(), self.elements[b].clone()))
                .collect(),
        }
    }
}

fn unique_extremum<F: Fn(usize, usize) -> bool>(candidates: &[usize], le: F) -> Option<usize> {
    let ext = candidates
        .iter()
        .copied()
        .find(|&x| candidates.iter().all(|&y| le(x, y)))?;
    Some(ext)
}
