use std::collections::BTreeMap;

use lattice_core::{Lattice, OrthoMap};
use serde::{Deserialize, Serialize};

use crate::error::SpaceError;

pub type RunId = String;
pub type SlotId = u32;
pub type ClassId = String;

/// Class of the tautological question, shared by every sub-lattice top.
pub const TAUTOLOGY_CLASS: &str = "Q_t";
/// Class of the absurd question, shared by every sub-lattice bottom.
pub const ABSURD_CLASS: &str = "Q_a";

/// A question is a position in one context's sub-lattice, tagged with the
/// identifiers that induce the three equivalences: questions are ~-related
/// iff their class ids match, ~s-related iff their run ids match, and
/// identified iff both match.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Question {
    pub class_id: ClassId,
    pub run_id: RunId,
    pub slot_id: SlotId,
    pub element: String,
}

impl Question {
    pub fn same_class(&self, other: &Question) -> bool {
        self.class_id == other.class_id
    }

    pub fn same_run(&self, other: &Question) -> bool {
        self.run_id == other.run_id
    }

    /// The identification relation: same class and same run.
    pub fn identified(&self, other: &Question) -> bool {
        self.same_class(other) && self.same_run(other)
    }
}

/// One context: its sub-lattice, optional orthocomplementation, and the
/// class id of every element (indexed like the lattice).
#[derive(Debug, Clone)]
pub struct Context {
    pub lattice: Lattice,
    pub ortho: Option<OrthoMap>,
    pub classes: Vec<ClassId>,
}

impl Context {
    pub fn class_of(&self, element: usize) -> &str {
        &self.classes[element]
    }

    /// Indices of elements carrying the given class.
    pub fn elements_of_class(&self, class: &str) -> Vec<usize> {
        (0..self.lattice.len())
            .filter(|&i| self.classes[i] == class)
            .collect()
    }
}

/// The question space: per-context sub-lattices connected by the class map.
/// Slots within a run are totally ordered by their integer id (time).
#[derive(Debug, Clone)]
pub struct QuestionSpace {
    contexts: BTreeMap<(RunId, SlotId), Context>,
}

impl QuestionSpace {
    /// Builds a space from sub-lattices and a per-element class assignment.
    ///
    /// Tops and bottoms get the tautology and absurd classes automatically;
    /// if the caller assigns them explicitly the assignment must agree
    /// across all sub-lattices. Every other element needs an explicit class.
    pub fn new(
        sublattices: BTreeMap<(RunId, SlotId), (Lattice, Option<OrthoMap>)>,
        classes: &BTreeMap<(RunId, SlotId, String), ClassId>,
    ) -> Result<QuestionSpace, SpaceError> {
        for (run, slot, element) in classes.keys() {
            let ctx = sublattices
                .get(&(run.clone(), *slot))
                .ok_or_else(|| SpaceError::UnknownContext(run.clone(), *slot))?;
            if ctx.0.index_of(element).is_none() {
                return Err(SpaceError::UnknownElement(
                    element.clone(),
                    run.clone(),
                    *slot,
                ));
            }
        }

        let mut top_class: Option<ClassId> = None;
        let mut bottom_class: Option<ClassId> = None;
        let mut contexts = BTreeMap::new();
        for ((run, slot), (lattice, ortho)) in sublattices {
            let mut assigned = Vec::with_capacity(lattice.len());
            for i in 0..lattice.len() {
                let explicit = classes
                    .get(&(run.clone(), slot, lattice.id(i).to_string()))
                    .cloned();
                let class = if i == lattice.top() {
                    let c = explicit.unwrap_or_else(|| TAUTOLOGY_CLASS.to_string());
                    match &top_class {
                        None => top_class = Some(c.clone()),
                        Some(expected) if *expected != c => {
                            return Err(SpaceError::InconsistentBoundClass {
                                bound: "top".into(),
                                found: c,
                                expected: expected.clone(),
                            })
                        }
                        Some(_) => {}
                    }
                    c
                } else if i == lattice.bottom() {
                    let c = explicit.unwrap_or_else(|| ABSURD_CLASS.to_string());
                    match &bottom_class {
                        None => bottom_class = Some(c.clone()),
                        Some(expected) if *expected != c => {
                            return Err(SpaceError::InconsistentBoundClass {
                                bound: "bottom".into(),
                                found: c,
                                expected: expected.clone(),
                            })
                        }
                        Some(_) => {}
                    }
                    c
                } else {
                    explicit.ok_or_else(|| SpaceError::MissingClass {
                        run: run.clone(),
                        slot,
                        element: lattice.id(i).to_string(),
                    })?
                };
                assigned.push(class);
            }
            contexts.insert(
                (run, slot),
                Context {
                    lattice,
                    ortho,
                    classes: assigned,
                },
            );
        }
        Ok(QuestionSpace { contexts })
    }

    pub fn contexts(&self) -> impl Iterator<Item = (&(RunId, SlotId), &Context)> {
        self.contexts.iter()
    }

    pub fn context(&self, run: &str, slot: SlotId) -> Result<&Context, SpaceError> {
        self.contexts
            .get(&(run.to_string(), slot))
            .ok_or_else(|| SpaceError::UnknownContext(run.to_string(), slot))
    }

    /// Contexts of one run, in slot order.
    pub fn run_contexts(&self, run: &str) -> Result<Vec<(SlotId, &Context)>, SpaceError> {
        let out: Vec<_> = self
            .contexts
            .iter()
            .filter(|((r, _), _)| r == run)
            .map(|((_, s), ctx)| (*s, ctx))
            .collect();
        if out.is_empty() {
            return Err(SpaceError::UnknownRun(run.to_string()));
        }
        Ok(out)
    }

    /// Resolves an element of a context into a full Question.
    pub fn question(&self, run: &str, slot: SlotId, element: &str) -> Result<Question, SpaceError> {
        let ctx = self.context(run, slot)?;
        let i = ctx
            .lattice
            .index_of(element)
            .ok_or_else(|| SpaceError::UnknownQuestion(element.into(), run.into(), slot))?;
        Ok(Question {
            class_id: ctx.classes[i].clone(),
            run_id: run.to_string(),
            slot_id: slot,
            element: element.to_string(),
        })
    }

    /// Every question of the space.
    pub fn questions(&self) -> Vec<Question> {
        self.contexts
            .iter()
            .flat_map(|((run, slot), ctx)| {
                (0..ctx.lattice.len()).map(move |i| Question {
                    class_id: ctx.classes[i].clone(),
                    run_id: run.clone(),
                    slot_id: *slot,
                    element: ctx.lattice.id(i).to_string(),
                })
            })
            .collect()
    }

    /// Intra-context implication: q1 entails q2 in their shared sub-lattice.
    pub fn implies(&self, q1: &Question, q2: &Question) -> Result<bool, SpaceError> {
        if q1.run_id != q2.run_id || q1.slot_id != q2.slot_id {
            return Err(SpaceError::DifferentContext(
                q1.run_id.clone(),
                q1.slot_id,
                q2.run_id.clone(),
                q2.slot_id,
            ));
        }
        let ctx = self.context(&q1.run_id, q1.slot_id)?;
        let a = ctx
            .lattice
            .index_of(&q1.element)
            .ok_or_else(|| SpaceError::UnknownQuestion(q1.element.clone(), q1.run_id.clone(), q1.slot_id))?;
        let b = ctx
            .lattice
            .index_of(&q2.element)
            .ok_or_else(|| SpaceError::UnknownQuestion(q2.element.clone(), q2.run_id.clone(), q2.slot_id))?;
        Ok(ctx.lattice.leq(a, b))
    }

    /// The question at the orthocomplement, swapping the roles of the two
    /// answers.
    pub fn negate(&self, q: &Question) -> Result<Question, SpaceError> {
        let ctx = self.context(&q.run_id, q.slot_id)?;
        let ortho = ctx
            .ortho
            .as_ref()
            .ok_or_else(|| SpaceError::NoOrthoMap(q.run_id.clone(), q.slot_id))?;
        let a = ctx
            .lattice
            .index_of(&q.element)
            .ok_or_else(|| SpaceError::UnknownQuestion(q.element.clone(), q.run_id.clone(), q.slot_id))?;
        let neg = ortho.apply(a);
        Ok(Question {
            class_id: ctx.classes[neg].clone(),
            run_id: q.run_id.clone(),
            slot_id: q.slot_id,
            element: ctx.lattice.id(neg).to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{mo2_space, two_b2_space};

    #[test]
    fn implication_within_context() {
        let space = two_b2_space();
        let a = space.question("r1", 0, "a").unwrap();
        let top = space.question("r1", 0, "1").unwrap();
        assert!(space.implies(&a, &a).unwrap());
        assert!(space.implies(&a, &top).unwrap());
        assert!(!space.implies(&top, &a).unwrap());
    }

    #[test]
    fn cross_context_implication_is_an_error() {
        let space = two_b2_space();
        let a = space.question("r1", 0, "a").unwrap();
        let b = space.question("r1", 1, "a").unwrap();
        assert!(matches!(
            space.implies(&a, &b),
            Err(SpaceError::DifferentContext(..))
        ));
    }

    #[test]
    fn mo2_atoms_are_incomparable() {
        let space = mo2_space(1);
        let a = space.question("r1", 0, "a").unwrap();
        let b = space.question("r1", 0, "b").unwrap();
        assert!(!space.implies(&a, &b).unwrap());
        assert!(!space.implies(&b, &a).unwrap());
    }

    #[test]
    fn negation_follows_the_ortho_map() {
        let space = mo2_space(1);
        let a = space.question("r1", 0, "a").unwrap();
        let na = space.negate(&a).unwrap();
        assert_eq!(na.element, "ap");
        assert_eq!(space.negate(&na).unwrap(), a);
        let top = space.question("r1", 0, "1").unwrap();
        assert_eq!(space.negate(&top).unwrap().element, "0");
    }

    #[test]
    fn bound_classes_are_auto_created() {
        let space = two_b2_space();
        let top = space.question("r1", 0, "1").unwrap();
        let bottom = space.question("r1", 1, "0").unwrap();
        assert_eq!(top.class_id, TAUTOLOGY_CLASS);
        assert_eq!(bottom.class_id, ABSURD_CLASS);
    }

    #[test]
    fn identification_is_class_and_run() {
        let space = two_b2_space();
        let q1 = space.question("r1", 0, "a").unwrap();
        let q2 = space.question("r1", 1, "a").unwrap();
        assert!(q1.same_class(&q2));
        assert!(q1.same_run(&q2));
        assert!(q1.identified(&q2));
    }
}
