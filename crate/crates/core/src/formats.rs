//! JSON file formats for posets, join-specifications, closure families and
//! representations.
//!
//! ```json
//! {"elements": ["x", "y", "z"], "le": [["x", "z"], ["y", "z"]]}
//! {"sets": [["x", "y"]]}
//! {"closed": [[], ["x"], ["y"], ["x", "y", "z"]]}
//! {"ground": ["g1"], "map": {"x": ["g1"]}, "m": "omega", "n": 3}
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::cardinal::Cardinal;
use crate::closure::ClosureFamily;
use crate::joinspec::JoinSpec;
use crate::poset::Poset;
use crate::representation::Representation;
use crate::subset::Subset;
use crate::{Error, Result};

/// Order pairs are generators; the reflexive-transitive closure is taken.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub elements: Vec<String>,
    #[serde(default)]
    pub le: Vec<(String, String)>,
}

impl PosetFile {
    /// Written with cover pairs only.
    pub fn from_poset(p: &Poset) -> PosetFile {
        PosetFile {
            elements: p.labels().to_vec(),
            le: p
                .cover_pairs()
                .into_iter()
                .map(|(a, b)| (p.label(a).to_string(), p.label(b).to_string()))
                .collect(),
        }
    }

    pub fn to_poset(&self) -> Result<Poset> {
        Poset::from_labeled(&self.elements, &self.le)
    }
}

/// Singletons are implicit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub sets: Vec<Vec<String>>,
}

impl SpecFile {
    /// Lists the members of size at least two.
    pub fn from_spec(spec: &JoinSpec) -> SpecFile {
        let p = spec.poset();
        SpecFile {
            sets: spec.nontrivial().map(|s| p.subset_labels(s)).collect(),
        }
    }

    pub fn to_spec(&self, poset: Arc<Poset>) -> Result<JoinSpec> {
        let sets = self
            .sets
            .iter()
            .map(|s| poset.subset(s))
            .collect::<Result<Vec<Subset>>>()?;
        JoinSpec::new(poset, sets)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub closed: Vec<Vec<String>>,
}

impl FamilyFile {
    pub fn from_family(f: &ClosureFamily) -> FamilyFile {
        FamilyFile { closed: f.labelled() }
    }

    pub fn to_family(&self, poset: Arc<Poset>) -> Result<ClosureFamily> {
        let sets = self
            .closed
            .iter()
            .map(|s| poset.subset(s))
            .collect::<Result<Vec<Subset>>>()?;
        ClosureFamily::new(poset, sets)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    pub ground: Vec<String>,
    pub map: BTreeMap<String, Vec<String>>,
    pub m: Cardinal,
    pub n: Cardinal,
}

impl RepresentationFile {
    pub fn from_representation(poset: &Poset, r: &Representation) -> RepresentationFile {
        RepresentationFile {
            ground: r.ground.clone(),
            map: r.labelled_map(poset).into_iter().collect(),
            m: r.m,
            n: r.n,
        }
    }

    /// Every poset element must be mapped, and only to declared ground points.
    pub fn to_representation(&self, poset: &Poset) -> Result<Representation> {
        if self.ground.len() > crate::MAX_ELEMENTS {
            return Err(Error::GroundTooLarge(self.ground.len()));
        }
        let ground_index = |g: &String| {
            self.ground
                .iter()
                .position(|h| h == g)
                .ok_or_else(|| Error::UnknownLabel(g.clone()))
        };
        for label in self.map.keys() {
            poset.index_of(label)?;
        }
        let map = poset
            .labels()
            .iter()
            .map(|label| {
                let image = self
                    .map
                    .get(label)
                    .ok_or_else(|| Error::UnknownLabel(label.clone()))?;
                image.iter().map(ground_index).collect::<Result<Subset>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Representation {
            ground: self.ground.clone(),
            map,
            m: self.m,
            n: self.n,
        })
    }
}

/// Deserializes JSON, reporting syntax and shape errors with their position.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn parse_poset(text: &str) -> Result<Poset> {
    parse::<PosetFile>(text)?.to_poset()
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}
