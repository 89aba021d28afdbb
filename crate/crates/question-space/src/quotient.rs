use lattice_core::{Lattice, PosetSpec};

use crate::checks::check_structure_preservation;
use crate::error::SpaceError;
use crate::space::{Context, Question, QuestionSpace, SlotId};

/// Lifts the lattice structure to the class ids, provided every context is
/// class-isomorphic to every other. The result is computed from one
/// representative and verified against all the rest, so it does not depend
/// on the choice.
pub fn lift_quotient(space: &QuestionSpace) -> Result<Lattice, SpaceError> {
    if !check_structure_preservation(space).passed() {
        return Err(SpaceError::PreservationFailed);
    }
    let contexts: Vec<&Context> = space.contexts().map(|(_, c)| c).collect();
    quotient_of(&contexts)
}

pub(crate) fn quotient_of(contexts: &[&Context]) -> Result<Lattice, SpaceError> {
    let rep = contexts.first().expect("at least one context");
    // class assignment must be injective per context for a quotient
    let mut sorted = rep.classes.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != rep.classes.len() {
        return Err(SpaceError::PreservationFailed);
    }

    for other in &contexts[1..] {
        if !class_isomorphic(rep, other) {
            return Err(SpaceError::PreservationFailed);
        }
    }

    let covers = rep
        .lattice
        .covers()
        .into_iter()
        .map(|(a, b)| (rep.classes[a].clone(), rep.classes[b].clone()))
        .collect();
    let spec = PosetSpec {
        elements: rep.classes.clone(),
        covers,
    };
    Ok(Lattice::build(&spec)?)
}

/// The class bijection between two contexts is an order isomorphism.
fn class_isomorphic(a: &Context, b: &Context) -> bool {
    if a.lattice.len() != b.lattice.len() {
        return false;
    }
    let mut map = Vec::with_capacity(a.lattice.len());
    for c in &a.classes {
        let matches = b.elements_of_class(c);
        match matches.as_slice() {
            [one] => map.push(*one),
            _ => return false,
        }
    }
    for x in 0..a.lattice.len() {
        for y in 0..a.lattice.len() {
            if a.lattice.leq(x, y) != b.lattice.leq(map[x], map[y]) {
                return false;
            }
        }
    }
    true
}

/// Enumerates the unextendable refinements of a run: sequences with the
/// question in slot i+1 strictly below the question in slot i (by class, in
/// the quotient), never touching the absurd bottom.
pub fn enumerate_refinements(
    space: &QuestionSpace,
    run: &str,
) -> Result<Vec<Vec<Question>>, SpaceError> {
    let slots = space.run_contexts(run)?;
    let contexts: Vec<&Context> = slots.iter().map(|&(_, c)| c).collect();
    let quotient = quotient_of(&contexts)?;

    let slot_ids: Vec<SlotId> = slots.iter().map(|(s, _)| *s).collect();
    let usable: Vec<usize> = (0..quotient.len())
        .filter(|&c| c != quotient.bottom())
        .collect();

    let mut out = Vec::new();
    let mut chain: Vec<usize> = Vec::new();
    fn extend(
        quotient: &Lattice,
        usable: &[usize],
        max_len: usize,
        chain: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let continuations: Vec<usize> = if chain.len() >= max_len {
            Vec::new()
        } else {
            usable
                .iter()
                .copied()
                .filter(|&c| {
                    chain
                        .last()
                        .map(|&prev| quotient.lt(c, prev))
                        .unwrap_or(true)
                })
                .collect()
        };
        if continuations.is_empty() {
            if !chain.is_empty() {
                out.push(chain.clone());
            }
            return;
        }
        for c in continuations {
            chain.push(c);
            extend(quotient, usable, max_len, chain, out);
            chain.pop();
        }
    }
    extend(&quotient, &usable, slot_ids.len(), &mut chain, &mut out);

    let mut sequences = Vec::with_capacity(out.len());
    for chain in out {
        let mut seq = Vec::with_capacity(chain.len());
        for (i, &class_idx) in chain.iter().enumerate() {
            let class = quotient.id(class_idx);
            let ctx = contexts[i];
            let element = ctx.elements_of_class(class)[0];
            seq.push(Question {
                class_id: class.to_string(),
                run_id: run.to_string(),
                slot_id: slot_ids[i],
                element: ctx.lattice.id(element).to_string(),
            });
        }
        sequences.push(seq);
    }
    Ok(sequences)
}

/// The maximal number of questions one can simultaneously know the answer
/// to within a run: the length of the longest refinement.
pub fn resolution_restriction(space: &QuestionSpace, run: &str) -> Result<usize, SpaceError> {
    let slots = space.run_contexts(run)?;
    let contexts: Vec<&Context> = slots.iter().map(|&(_, c)| c).collect();
    let quotient = quotient_of(&contexts)?;
    // atomicity guards the finiteness argument; vacuous for finite lattices
    // but checked so the precondition stays visible
    let atoms = quotient.atoms();
    for x in 0..quotient.len() {
        if x != quotient.bottom() && !atoms.iter().any(|&a| quotient.leq(a, x)) {
            return Err(SpaceError::NotAtomic);
        }
    }
    Ok(enumerate_refinements(space, run)?
        .iter()
        .map(Vec::len)
        .max()
        .unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{homogeneous_run_space, mo2_space};
    use lattice_core::{classify, Family};

    #[test]
    fn quotient_of_mo2_contexts_is_mo2() {
        let space = mo2_space(3);
        let q = lift_quotient(&space).unwrap();
        assert_eq!(q.len(), 6);
        assert_eq!(q.atoms().len(), 4);
        let report = classify(&q, None).unwrap();
        assert!(report.is_orthomodular);
        assert!(!report.is_distributive);
    }

    #[test]
    fn quotient_of_single_context_matches_it() {
        let space = homogeneous_run_space(Family::Boolean(2), "r1", 1);
        let q = lift_quotient(&space).unwrap();
        assert_eq!(q.len(), 4);
        assert_eq!(q.atoms().len(), 2);
    }

    #[test]
    fn non_preserving_space_fails_to_lift() {
        use crate::fixtures::space_from_parts;
        use lattice_core::{generate_family, Lattice, OrthoMap};
        use std::collections::BTreeMap;

        let part = |run: &str, slot: u32| {
            let (spec, ortho) = generate_family(Family::Mo(2)).unwrap();
            let l = Lattice::build(&spec).unwrap();
            let om = OrthoMap::from_pairs(&l, &ortho.unwrap()).unwrap();
            (run.to_string(), slot, l, Some(om))
        };
        let mut classes = BTreeMap::new();
        for (el, class) in [("a", "c_a"), ("b", "c_b"), ("ap", "c_ap"), ("bp", "c_bp")] {
            classes.insert(("r1".to_string(), 0, el.to_string()), class.to_string());
        }
        for (el, class) in [("a", "c_x"), ("b", "c_b"), ("ap", "c_ap"), ("bp", "c_bp")] {
            classes.insert(("r1".to_string(), 1, el.to_string()), class.to_string());
        }
        let space = space_from_parts(vec![part("r1", 0), part("r1", 1)], classes).unwrap();
        assert!(matches!(
            lift_quotient(&space),
            Err(SpaceError::PreservationFailed)
        ));
    }

    #[test]
    fn b3_refinements_reach_length_three() {
        let space = homogeneous_run_space(Family::Boolean(3), "r1", 3);
        let refinements = enumerate_refinements(&space, "r1").unwrap();
        let longest = refinements.iter().map(Vec::len).max().unwrap();
        assert_eq!(longest, 3);
        // a longest one descends top > coatom > atom
        let chain = refinements.iter().find(|r| r.len() == 3).unwrap();
        assert_eq!(chain[0].class_id, "Q_t");
        assert_eq!(resolution_restriction(&space, "r1").unwrap(), 3);
    }

    #[test]
    fn b1_resolution_is_one() {
        let space = homogeneous_run_space(Family::Boolean(1), "r1", 2);
        assert_eq!(resolution_restriction(&space, "r1").unwrap(), 1);
    }

    #[test]
    fn mo2_resolution_is_two() {
        let space = mo2_space(3);
        let refinements = enumerate_refinements(&space, "r1").unwrap();
        assert!(refinements.iter().all(|r| r.len() <= 2));
        assert_eq!(resolution_restriction(&space, "r1").unwrap(), 2);
    }
}
