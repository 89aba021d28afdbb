use lattice_core::{
    classify, generate_family, two_valued_homomorphisms, Family, Lattice, OrthoMap, PosetSpec,
};
use proptest::prelude::*;

fn fixture_families() -> Vec<Family> {
    vec![
        Family::Boolean(0),
        Family::Boolean(1),
        Family::Boolean(2),
        Family::Boolean(3),
        Family::Boolean(4),
        Family::Boolean(5),
        Family::Chain(2),
        Family::Chain(3),
        Family::Chain(5),
        Family::Chain(9),
        Family::Mo(1),
        Family::Mo(2),
        Family::Mo(3),
        Family::Mo(4),
        Family::Benzene,
        Family::DiamondM3,
        Family::PentagonN5,
    ]
}

fn build(family: Family) -> (Lattice, Option<OrthoMap>) {
    let (spec, ortho) = generate_family(family).unwrap();
    let l = Lattice::build(&spec).unwrap();
    let om = ortho.map(|p| OrthoMap::from_pairs(&l, &p).unwrap());
    (l, om)
}

#[test]
fn lattice_laws_hold_on_all_fixtures() {
    for family in fixture_families() {
        let (l, _) = build(family);
        let n = l.len();
        for a in 0..n {
            assert_eq!(l.join(a, a), a);
            assert_eq!(l.meet(a, a), a);
            for b in 0..n {
                assert_eq!(l.join(a, b), l.join(b, a));
                assert_eq!(l.meet(a, b), l.meet(b, a));
                // absorption
                assert_eq!(l.join(a, l.meet(a, b)), a);
                assert_eq!(l.meet(a, l.join(a, b)), a);
                // order compatibility
                assert_eq!(l.leq(a, b), l.join(a, b) == b);
                assert_eq!(l.leq(a, b), l.meet(a, b) == a);
                for c in 0..n {
                    assert_eq!(l.join(a, l.join(b, c)), l.join(l.join(a, b), c));
                    assert_eq!(l.meet(a, l.meet(b, c)), l.meet(l.meet(a, b), c));
                }
            }
        }
    }
}

#[test]
fn jauch_piron_criterion_across_fixtures() {
    // homomorphisms exist exactly on the distributive orthomodular lattices;
    // the restriction to orthomodular matters: the benzene ring is
    // orthocomplemented, not distributive, yet maps onto {0,1}
    for family in fixture_families() {
        let (l, om) = build(family);
        if l.len() > 32 || l.len() < 2 {
            continue;
        }
        let Some(om) = om else { continue };
        let report = classify(&l, Some(&om)).unwrap();
        if !report.is_orthomodular {
            continue;
        }
        let homs = two_valued_homomorphisms(&l, &om);
        assert_eq!(
            !homs.is_empty(),
            report.is_distributive,
            "Jauch-Piron mismatch on {family:?}"
        );
    }
}

#[test]
fn benzene_maps_onto_two_despite_nondistributivity() {
    let (l, om) = build(Family::Benzene);
    let homs = two_valued_homomorphisms(&l, &om.unwrap());
    assert!(!homs.is_empty());
}

#[test]
fn taxonomy_matches_expected_flags() {
    struct Expect {
        family: Family,
        orthomodular: bool,
        distributive: bool,
        boolean: bool,
    }
    let table = [
        Expect { family: Family::Boolean(3), orthomodular: true, distributive: true, boolean: true },
        Expect { family: Family::Boolean(6), orthomodular: true, distributive: true, boolean: true },
        Expect { family: Family::Mo(2), orthomodular: true, distributive: false, boolean: false },
        Expect { family: Family::Mo(4), orthomodular: true, distributive: false, boolean: false },
        Expect { family: Family::Benzene, orthomodular: false, distributive: false, boolean: false },
        // M3 has three atoms, which cannot be paired involutively, so it
        // carries no orthocomplementation and a fortiori is not orthomodular
        Expect { family: Family::DiamondM3, orthomodular: false, distributive: false, boolean: false },
        Expect { family: Family::PentagonN5, orthomodular: false, distributive: false, boolean: false },
        Expect { family: Family::Chain(4), orthomodular: false, distributive: true, boolean: false },
    ];
    for e in table {
        let (l, om) = build(e.family);
        let r = classify(&l, om.as_ref()).unwrap();
        assert_eq!(r.is_orthomodular, e.orthomodular, "{:?} orthomodular", e.family);
        assert_eq!(r.is_distributive, e.distributive, "{:?} distributive", e.family);
        assert_eq!(r.is_boolean, e.boolean, "{:?} boolean", e.family);
    }
}

fn family_strategy() -> impl Strategy<Value = Family> {
    prop::sample::select(fixture_families())
}

proptest! {
    #[test]
    fn classification_is_order_insensitive(family in family_strategy(), seed in any::<u64>()) {
        let (spec, ortho) = generate_family(family).unwrap();
        let l = Lattice::build(&spec).unwrap();
        let om = ortho.as_ref().map(|p| OrthoMap::from_pairs(&l, p).unwrap());
        let base = classify(&l, om.as_ref()).unwrap();

        // permute the element list with a cheap seeded shuffle
        let mut elements = spec.elements.clone();
        let mut state = seed | 1;
        for i in (1..elements.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            elements.swap(i, (state >> 33) as usize % (i + 1));
        }
        let permuted = PosetSpec { elements, covers: spec.covers.clone() };
        let lp = Lattice::build(&permuted).unwrap();
        let omp = ortho.as_ref().map(|p| OrthoMap::from_pairs(&lp, p).unwrap());
        let shuffled = classify(&lp, omp.as_ref()).unwrap();

        prop_assert_eq!(base.is_complemented, shuffled.is_complemented);
        prop_assert_eq!(base.has_orthocomplementation, shuffled.has_orthocomplementation);
        prop_assert_eq!(base.is_orthomodular, shuffled.is_orthomodular);
        prop_assert_eq!(base.is_distributive, shuffled.is_distributive);
        prop_assert_eq!(base.is_boolean, shuffled.is_boolean);
        prop_assert_eq!(base.is_atomic, shuffled.is_atomic);
        let mut a1 = base.atoms.clone();
        let mut a2 = shuffled.atoms.clone();
        a1.sort();
        a2.sort();
        prop_assert_eq!(a1, a2);
    }

    #[test]
    fn ortho_de_morgan(family in family_strategy()) {
        let (l, om) = build(family);
        if let Some(om) = om {
            for a in 0..l.len() {
                for b in 0..l.len() {
                    prop_assert_eq!(om.apply(l.join(a, b)), l.meet(om.apply(a), om.apply(b)));
                    prop_assert_eq!(om.apply(l.meet(a, b)), l.join(om.apply(a), om.apply(b)));
                }
            }
        }
    }
}
