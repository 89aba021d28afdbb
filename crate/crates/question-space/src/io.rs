use std::collections::BTreeMap;

use lattice_core::LatticeFile;
use serde::{Deserialize, Serialize};

use crate::error::SpaceError;
use crate::space::{QuestionSpace, RunId, SlotId};

/// On-disk space description:
/// `{ "sublattices": {"run:slot": <lattice file>}, "classes": {"run:slot:element": class} }`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceFile {
    pub sublattices: BTreeMap<String, LatticeFile>,
    #[serde(default)]
    pub classes: BTreeMap<String, String>,
}

fn parse_context_key(key: &str) -> Result<(RunId, SlotId), SpaceError> {
    let (run, slot) = key
        .split_once(':')
        .ok_or_else(|| SpaceError::BadKey(key.to_string()))?;
    let slot: SlotId = slot
        .parse()
        .map_err(|_| SpaceError::BadKey(key.to_string()))?;
    Ok((run.to_string(), slot))
}

fn parse_class_key(key: &str) -> Result<(RunId, SlotId, String), SpaceError> {
    let mut parts = key.splitn(3, ':');
    let (Some(run), Some(slot), Some(element)) = (parts.next(), parts.next(), parts.next()) else {
        return Err(SpaceError::BadKey(key.to_string()));
    };
    let slot: SlotId = slot
        .parse()
        .map_err(|_| SpaceError::BadKey(key.to_string()))?;
    Ok((run.to_string(), slot, element.to_string()))
}

impl SpaceFile {
    pub fn build(&self) -> Result<QuestionSpace, SpaceError> {
        let mut sublattices = BTreeMap::new();
        for (key, file) in &self.sublattices {
            let (run, slot) = parse_context_key(key)?;
            let (lattice, ortho) = file.build()?;
            sublattices.insert((run, slot), (lattice, ortho));
        }
        let mut classes = BTreeMap::new();
        for (key, class) in &self.classes {
            classes.insert(parse_class_key(key)?, class.clone());
        }
        QuestionSpace::new(sublattices, &classes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_two_context_space() {
        let text = r#"{
            "sublattices": {
                "r1:0": {
                    "elements": ["0", "a", "b", "1"],
                    "covers": [["0","a"], ["0","b"], ["a","1"], ["b","1"]],
                    "ortho": {"a": "b", "b": "a"}
                },
                "r1:1": {
                    "elements": ["0", "a", "b", "1"],
                    "covers": [["0","a"], ["0","b"], ["a","1"], ["b","1"]]
                }
            },
            "classes": {
                "r1:0:a": "c_a", "r1:0:b": "c_b",
                "r1:1:a": "c_a", "r1:1:b": "c_b"
            }
        }"#;
        let file: SpaceFile = serde_json::from_str(text).unwrap();
        let space = file.build().unwrap();
        let q = space.question("r1", 0, "a").unwrap();
        assert_eq!(q.class_id, "c_a");
        assert!(space.negate(&q).is_ok());
        let q1 = space.question("r1", 1, "a").unwrap();
        assert!(matches!(
            space.negate(&q1),
            Err(SpaceError::NoOrthoMap(..))
        ));
    }

    #[test]
    fn bad_keys_are_rejected() {
        let text = r#"{"sublattices": {"r1": {"elements": ["x"], "covers": []}}}"#;
        let file: SpaceFile = serde_json::from_str(text).unwrap();
        assert!(matches!(file.build(), Err(SpaceError::BadKey(_))));
    }

    #[test]
    fn missing_class_is_rejected() {
        let text = r#"{
            "sublattices": {
                "r1:0": {
                    "elements": ["0", "a", "b", "1"],
                    "covers": [["0","a"], ["0","b"], ["a","1"], ["b","1"]]
                }
            }
        }"#;
        let file: SpaceFile = serde_json::from_str(text).unwrap();
        assert!(matches!(file.build(), Err(SpaceError::MissingClass { .. })));
    }
}
