use std::collections::BTreeMap;

use serde::Serialize;

use crate::space::{ClassId, QuestionSpace, RunId, SlotId};

/// Two distinct elements of one sub-lattice sharing a class. Under the
/// partitioned reading every such pair is a violation: class-equivalent
/// questions in one context would be empirically indistinguishable.
#[derive(Debug, Clone, Serialize)]
pub struct OrthogonalityViolation {
    pub run: RunId,
    pub slot: SlotId,
    pub class: ClassId,
    pub elements: (String, String),
    /// Whether the pair at least satisfies meet = 0 and join = 1.
    pub complementary: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrthogonalityReport {
    pub violations: Vec<OrthogonalityViolation>,
}

impl OrthogonalityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_sublattice_orthogonality(space: &QuestionSpace) -> OrthogonalityReport {
    let mut violations = Vec::new();
    for ((run, slot), ctx) in space.contexts() {
        let l = &ctx.lattice;
        for a in 0..l.len() {
            for b in (a + 1)..l.len() {
                if ctx.classes[a] == ctx.classes[b] {
                    violations.push(OrthogonalityViolation {
                        run: run.clone(),
                        slot: *slot,
                        class: ctx.classes[a].clone(),
                        elements: (l.id(a).to_string(), l.id(b).to_string()),
                        complementary: l.meet(a, b) == l.bottom() && l.join(a, b) == l.top(),
                    });
                }
            }
        }
    }
    OrthogonalityReport { violations }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PreservationDefect {
    /// No class-matched element above the transported base.
    Missing,
    /// More than one class-matched element above the transported base.
    Ambiguous,
}

/// A failure of the condition: Q1 ~ Q1' and Q1 entails Q2 imply a unique
/// Q2' with Q1' entailing Q2' and Q2 ~ Q2'.
#[derive(Debug, Clone, Serialize)]
pub struct PreservationFailure {
    pub from: (RunId, SlotId),
    pub to: (RunId, SlotId),
    /// Base element Q1 in the source sub-lattice.
    pub element: String,
    /// Class of the successor Q2 that fails to transport.
    pub class: ClassId,
    pub defect: PreservationDefect,
}

#[derive(Debug, Clone, Serialize)]
pub struct PreservationReport {
    pub failures: Vec<PreservationFailure>,
}

impl PreservationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_structure_preservation(space: &QuestionSpace) -> PreservationReport {
    let mut failures = Vec::new();
    let contexts: Vec<_> = space.contexts().collect();
    for (key_a, ctx_a) in &contexts {
        for (key_b, ctx_b) in &contexts {
            if key_a == key_b {
                continue;
            }
            let la = &ctx_a.lattice;
            let lb = &ctx_b.lattice;
            for q1 in 0..la.len() {
                for q1p in ctx_b.elements_of_class(ctx_a.class_of(q1)) {
                    for q2 in 0..la.len() {
                        if !la.leq(q1, q2) {
                            continue;
                        }
                        let class2 = ctx_a.class_of(q2);
                        let successors: Vec<usize> = ctx_b
                            .elements_of_class(class2)
                            .into_iter()
                            .filter(|&e| lb.leq(q1p, e))
                            .collect();
                        let defect = match successors.len() {
                            0 => Some(PreservationDefect::Missing),
                            1 => None,
                            _ => Some(PreservationDefect::Ambiguous),
                        };
                        if let Some(defect) = defect {
                            failures.push(PreservationFailure {
                                from: (key_a.0.clone(), key_a.1),
                                to: (key_b.0.clone(), key_b.1),
                                element: la.id(q1).to_string(),
                                class: class2.to_string(),
                                defect,
                            });
                        }
                    }
                }
            }
        }
    }
    PreservationReport { failures }
}

/// A closure class containing two distinct elements of one sub-lattice
/// after the proposed merges.
#[derive(Debug, Clone, Serialize)]
pub struct JoinFlag {
    pub run: RunId,
    pub slot: SlotId,
    pub elements: (String, String),
    pub classes: (ClassId, ClassId),
}

#[derive(Debug, Clone, Serialize)]
pub struct JoinReport {
    pub flags: Vec<JoinFlag>,
}

impl JoinReport {
    pub fn passed(&self) -> bool {
        self.flags.is_empty()
    }
}

/// Diagnoses whether merging the proposed class pairs would identify two
/// distinct questions inside one context. Merges are never applied.
pub fn detect_class_joins(space: &QuestionSpace, merges: &[(ClassId, ClassId)]) -> JoinReport {
    // union-find over class ids
    let mut parent: BTreeMap<ClassId, ClassId> = BTreeMap::new();
    let root = |parent: &mut BTreeMap<ClassId, ClassId>, mut c: ClassId| -> ClassId {
        loop {
            let p = parent.entry(c.clone()).or_insert_with(|| c.clone()).clone();
            if p == c {
                return c;
            }
            c = p;
        }
    };
    for (x, y) in merges {
        let rx = root(&mut parent, x.clone());
        let ry = root(&mut parent, y.clone());
        if rx != ry {
            parent.insert(rx, ry);
        }
    }

    let mut flags = Vec::new();
    for ((run, slot), ctx) in space.contexts() {
        let roots: Vec<ClassId> = ctx
            .classes
            .iter()
            .map(|c| root(&mut parent, c.clone()))
            .collect();
        for a in 0..roots.len() {
            for b in (a + 1)..roots.len() {
                if roots[a] == roots[b] {
                    flags.push(JoinFlag {
                        run: run.clone(),
                        slot: *slot,
                        elements: (
                            ctx.lattice.id(a).to_string(),
                            ctx.lattice.id(b).to_string(),
                        ),
                        classes: (ctx.classes[a].clone(), ctx.classes[b].clone()),
                    });
                }
            }
        }
    }
    JoinReport { flags }
}
