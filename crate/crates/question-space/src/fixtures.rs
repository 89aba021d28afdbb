//! Ready-made spaces used by tests and examples.

use std::collections::BTreeMap;

use lattice_core::{generate_family, Family, Lattice, OrthoMap};

use crate::space::{ClassId, QuestionSpace, RunId, SlotId};

fn built(family: Family) -> (Lattice, Option<OrthoMap>) {
    let (spec, ortho) = generate_family(family).expect("fixture family in bounds");
    let lattice = Lattice::build(&spec).expect("fixture builds");
    let om = ortho.map(|p| OrthoMap::from_pairs(&lattice, &p).expect("fixture ortho valid"));
    (lattice, om)
}

/// `slots` copies of the same family sub-lattice in run `run`, classes
/// shared across slots via the element id.
pub fn homogeneous_run_space(family: Family, run: &str, slots: u32) -> QuestionSpace {
    let mut sublattices = BTreeMap::new();
    let mut classes = BTreeMap::new();
    for slot in 0..slots {
        let (lattice, ortho) = built(family);
        for i in 0..lattice.len() {
            if i == lattice.top() || i == lattice.bottom() {
                continue;
            }
            classes.insert(
                (run.to_string(), slot, lattice.id(i).to_string()),
                format!("c_{}", lattice.id(i)),
            );
        }
        sublattices.insert((run.to_string(), slot), (lattice, ortho));
    }
    QuestionSpace::new(sublattices, &classes).expect("homogeneous space is consistent")
}

/// Two B2 contexts in one run with matching classes per element id.
pub fn two_b2_space() -> QuestionSpace {
    homogeneous_run_space(Family::Boolean(2), "r1", 2)
}

/// MO2 contexts in one run, `slots` many.
pub fn mo2_space(slots: u32) -> QuestionSpace {
    homogeneous_run_space(Family::Mo(2), "r1", slots)
}

/// A space built from explicit parts, for hand-made counterexample fixtures.
pub fn space_from_parts(
    parts: Vec<(RunId, SlotId, Lattice, Option<OrthoMap>)>,
    classes: BTreeMap<(RunId, SlotId, String), ClassId>,
) -> Result<QuestionSpace, crate::error::SpaceError> {
    let sublattices = parts
        .into_iter()
        .map(|(run, slot, lattice, ortho)| ((run, slot), (lattice, ortho)))
        .collect();
    QuestionSpace::new(sublattices, &classes)
}
