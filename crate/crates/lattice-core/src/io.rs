use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::LatticeError;
use crate::lattice::{Lattice, PosetSpec};
use crate::ortho::OrthoMap;

/// On-disk lattice description:
/// `{ "elements": [..], "covers": [[lo, hi], ..], "ortho": {id: id} }`
/// with `ortho` optional.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeFile {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ortho: Option<BTreeMap<String, String>>,
}

impl LatticeFile {
    pub fn from_spec(spec: &PosetSpec, ortho: Option<&BTreeMap<String, String>>) -> Self {
        LatticeFile {
            elements: spec.elements.clone(),
            covers: spec.covers.clone(),
            ortho: ortho.cloned(),
        }
    }

    pub fn spec(&self) -> PosetSpec {
        PosetSpec {
            elements: self.elements.clone(),
            covers: self.covers.clone(),
        }
    }

    /// Builds the lattice and validates the orthocomplementation if present.
    pub fn build(&self) -> Result<(Lattice, Option<OrthoMap>), LatticeError> {
        let lattice = Lattice::build(&self.spec())?;
        let ortho = match &self.ortho {
            Some(pairs) => Some(OrthoMap::from_pairs(&lattice, pairs)?),
            None => None,
        };
        Ok((lattice, ortho))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_ortho() {
        let text = r#"{
            "elements": ["0", "a", "b", "1"],
            "covers": [["0","a"], ["0","b"], ["a","1"], ["b","1"]],
            "ortho": {"a": "b", "b": "a"}
        }"#;
        let file: LatticeFile = serde_json::from_str(text).unwrap();
        let (lattice, ortho) = file.build().unwrap();
        assert_eq!(lattice.len(), 4);
        let om = ortho.unwrap();
        assert_eq!(om.apply(lattice.index_of("a").unwrap()), lattice.index_of("b").unwrap());

        let back = LatticeFile::from_spec(&lattice.to_spec(), Some(&om.to_pairs(&lattice)));
        let json = serde_json::to_string(&back).unwrap();
        let reparsed: LatticeFile = serde_json::from_str(&json).unwrap();
        let (l2, _) = reparsed.build().unwrap();
        assert_eq!(l2.len(), 4);
    }

    #[test]
    fn ortho_field_is_optional() {
        let text = r#"{"elements": ["x"], "covers": []}"#;
        let file: LatticeFile = serde_json::from_str(text).unwrap();
        let (lattice, ortho) = file.build().unwrap();
        assert_eq!(lattice.len(), 1);
        assert!(ortho.is_none());
    }

    #[test]
    fn invalid_ortho_surfaces_as_error() {
        let text = r#"{
            "elements": ["0", "a", "b", "1"],
            "covers": [["0","a"], ["0","b"], ["a","1"], ["b","1"]],
            "ortho": {"a": "a", "b": "b"}
        }"#;
        let file: LatticeFile = serde_json::from_str(text).unwrap();
        assert!(matches!(
            file.build(),
            Err(LatticeError::InvalidOrthoMap { .. })
        ));
    }
}
