use std::collections::BTreeMap;

use crate::error::LatticeError;
use crate::lattice::PosetSpec;

/// Canonical fixture families for the lattice taxonomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Power-set lattice of n atoms (2^n elements).
    Boolean(u32),
    /// Total order on n elements.
    Chain(u32),
    /// Modular ortholattice MOn: bottom, top, and n complementary atom pairs.
    Mo(u32),
    /// O6 hexagon: two 2-chains between the bounds.
    Benzene,
    /// M3: three incomparable atoms between the bounds.
    DiamondM3,
    /// N5: the pentagon.
    PentagonN5,
}

pub const BOOLEAN_MAX: u32 = 6;
pub const MO_MAX: u32 = 8;
pub const CHAIN_MAX: u32 = 32;

/// Returns the canonical spec and, where one exists, a canonical
/// orthocomplementation as element-id pairs.
pub fn generate_family(
    family: Family,
) -> Result<(PosetSpec, Option<BTreeMap<String, String>>), LatticeError> {
    match family {
        Family::Boolean(n) => {
            if n > BOOLEAN_MAX {
                return Err(LatticeError::SizeBound(n as usize, BOOLEAN_MAX as usize));
            }
            let size = 1usize << n;
            let id = |mask: usize| -> String {
                if mask == 0 {
                    "0".into()
                } else if mask == size - 1 && n > 0 {
                    "1".into()
                } else {
                    let mut s = String::new();
                    for bit in 0..n {
                        if mask & (1 << bit) != 0 {
                            s.push((b'a' + bit as u8) as char);
                        }
                    }
                    s
                }
            };
            let elements: Vec<String> = (0..size).map(id).collect();
            let mut covers = Vec::new();
            for mask in 0..size {
                for bit in 0..n {
                    if mask & (1 << bit) == 0 {
                        covers.push((id(mask), id(mask | (1 << bit))));
                    }
                }
            }
            let ortho = (0..size)
                .map(|mask| (id(mask), id(!mask & (size - 1))))
                .collect();
            Ok((PosetSpec { elements, covers }, Some(ortho)))
        }
        Family::Chain(n) => {
            if n < 1 || n > CHAIN_MAX {
                return Err(LatticeError::SizeBound(n as usize, CHAIN_MAX as usize));
            }
            let id = |i: u32| -> String {
                if i == 0 {
                    "0".into()
                } else if i == n - 1 {
                    "1".into()
                } else {
                    format!("c{i}")
                }
            };
            let elements = (0..n).map(id).collect();
            let covers = (1..n).map(|i| (id(i - 1), id(i))).collect();
            // a chain of length > 2 has no orthocomplementation
            let ortho = if n <= 2 {
                Some((0..n).map(|i| (id(i), id(n - 1 - i))).collect())
            } else {
                None
            };
            Ok((PosetSpec { elements, covers }, ortho))
        }
        Family::Mo(n) => {
            if n < 1 || n > MO_MAX {
                return Err(LatticeError::SizeBound(n as usize, MO_MAX as usize));
            }
            let mut elements = vec!["0".to_string()];
            let mut covers = Vec::new();
            let mut ortho = BTreeMap::new();
            ortho.insert("0".to_string(), "1".to_string());
            ortho.insert("1".to_string(), "0".to_string());
            for i in 0..n {
                let a = format!("{}", (b'a' + i as u8) as char);
                let ap = format!("{a}p");
                covers.push(("0".to_string(), a.clone()));
                covers.push(("0".to_string(), ap.clone()));
                covers.push((a.clone(), "1".to_string()));
                covers.push((ap.clone(), "1".to_string()));
                ortho.insert(a.clone(), ap.clone());
                ortho.insert(ap.clone(), a.clone());
                elements.push(a);
                elements.push(ap);
            }
            elements.push("1".to_string());
            Ok((PosetSpec { elements, covers }, Some(ortho)))
        }
        Family::Benzene => {
            let spec = PosetSpec::new(
                vec!["0", "a", "b", "ap", "bp", "1"],
                vec![
                    ("0", "a"),
                    ("a", "b"),
                    ("b", "1"),
                    ("0", "ap"),
                    ("ap", "bp"),
                    ("bp", "1"),
                ],
            );
            let ortho = [
                ("0", "1"),
                ("1", "0"),
                ("a", "bp"),
                ("bp", "a"),
                ("b", "ap"),
                ("ap", "b"),
            ]
            .into_iter()
            .map(|(x, y)| (x.to_string(), y.to_string()))
            .collect();
            Ok((spec, Some(ortho)))
        }
        Family::DiamondM3 => {
            let spec = PosetSpec::new(
                vec!["0", "a", "b", "c", "1"],
                vec![
                    ("0", "a"),
                    ("0", "b"),
                    ("0", "c"),
                    ("a", "1"),
                    ("b", "1"),
                    ("c", "1"),
                ],
            );
            Ok((spec, None))
        }
        Family::PentagonN5 => {
            let spec = PosetSpec::new(
                vec!["0", "a", "c", "b", "1"],
                vec![("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
            );
            Ok((spec, None))
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        // families with a size parameter are spelled e.g. "boolean" + n via
        // the caller; bare names map to the parameterless fixtures
        match s {
            "benzene" | "o6" => Ok(Family::Benzene),
            "diamond_m3" | "m3" => Ok(Family::DiamondM3),
            "pentagon_n5" | "n5" => Ok(Family::PentagonN5),
            other => Err(format!("unknown family `{other}`")),
        }
    }
}
