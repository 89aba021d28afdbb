use lattice_core::{Family, Lattice};
use question_space::fixtures::homogeneous_run_space;
use question_space::{
    check_sublattice_orthogonality, enumerate_refinements, lift_quotient, resolution_restriction,
    QuestionSpace,
};

fn fixture_spaces() -> Vec<(QuestionSpace, &'static str)> {
    vec![
        (homogeneous_run_space(Family::Boolean(1), "r1", 2), "r1"),
        (homogeneous_run_space(Family::Boolean(2), "r1", 3), "r1"),
        (homogeneous_run_space(Family::Boolean(3), "r1", 3), "r1"),
        (homogeneous_run_space(Family::Mo(2), "r1", 3), "r1"),
        (homogeneous_run_space(Family::Mo(3), "r1", 2), "r1"),
        (homogeneous_run_space(Family::Chain(4), "r1", 3), "r1"),
        (homogeneous_run_space(Family::Benzene, "r1", 4), "r1"),
    ]
}

#[test]
fn identification_is_the_intersection_of_the_two_equivalences() {
    for (space, _) in fixture_spaces() {
        let questions = space.questions();
        for q1 in &questions {
            for q2 in &questions {
                assert_eq!(
                    q1.identified(q2),
                    q1.same_class(q2) && q1.same_run(q2)
                );
            }
        }
    }
}

#[test]
fn negation_is_involutive_and_order_reversing() {
    for (space, _) in fixture_spaces() {
        for q1 in space.questions() {
            let Ok(n1) = space.negate(&q1) else { continue };
            assert_eq!(space.negate(&n1).unwrap(), q1);
            for q2 in space.questions() {
                if q2.run_id != q1.run_id || q2.slot_id != q1.slot_id {
                    continue;
                }
                let n2 = space.negate(&q2).unwrap();
                if space.implies(&q1, &q2).unwrap() {
                    assert!(space.implies(&n2, &n1).unwrap());
                }
            }
        }
    }
}

#[test]
fn quotient_is_independent_of_the_representative() {
    // compare the quotient against each context directly: same size and the
    // class map is an order isomorphism onto every sub-lattice
    for (space, _) in fixture_spaces() {
        let quotient = lift_quotient(&space).unwrap();
        for (_, ctx) in space.contexts() {
            assert_eq!(quotient.len(), ctx.lattice.len());
            for a in 0..ctx.lattice.len() {
                for b in 0..ctx.lattice.len() {
                    let qa = quotient.index_of(ctx.class_of(a)).unwrap();
                    let qb = quotient.index_of(ctx.class_of(b)).unwrap();
                    assert_eq!(ctx.lattice.leq(a, b), quotient.leq(qa, qb));
                }
            }
        }
    }
}

#[test]
fn orthogonality_pass_means_no_identified_pair_in_one_slot() {
    for (space, _) in fixture_spaces() {
        assert!(check_sublattice_orthogonality(&space).passed());
        let questions = space.questions();
        for q1 in &questions {
            for q2 in &questions {
                if q1 == q2 {
                    continue;
                }
                if q1.run_id == q2.run_id && q1.slot_id == q2.slot_id {
                    assert!(!q1.identified(q2));
                }
            }
        }
    }
}

/// Longest strict descending chain avoiding the bottom, found directly.
fn longest_chain_excluding_bottom(l: &Lattice) -> usize {
    fn descend(l: &Lattice, from: usize) -> usize {
        1 + (0..l.len())
            .filter(|&x| x != l.bottom() && l.lt(x, from))
            .map(|x| descend(l, x))
            .max()
            .unwrap_or(0)
    }
    (0..l.len())
        .filter(|&x| x != l.bottom())
        .map(|x| descend(l, x))
        .max()
        .unwrap_or(0)
}

#[test]
fn resolution_matches_an_independent_chain_search() {
    // runs above have at least as many slots as the lattice height minus
    // one, so the slot count never truncates the longest refinement
    for (space, run) in fixture_spaces() {
        let quotient = lift_quotient(&space).unwrap();
        let expected = longest_chain_excluding_bottom(&quotient);
        assert_eq!(resolution_restriction(&space, run).unwrap(), expected);
        assert_eq!(expected, quotient.height() - 1);
    }
}

#[test]
fn refinements_are_strictly_descending_and_skip_bottom() {
    for (space, run) in fixture_spaces() {
        let quotient = lift_quotient(&space).unwrap();
        for seq in enumerate_refinements(&space, run).unwrap() {
            for w in seq.windows(2) {
                let hi = quotient.index_of(&w[0].class_id).unwrap();
                let lo = quotient.index_of(&w[1].class_id).unwrap();
                assert!(quotient.lt(lo, hi));
            }
            for q in &seq {
                assert_ne!(
                    quotient.index_of(&q.class_id).unwrap(),
                    quotient.bottom()
                );
            }
        }
    }
}
