//! JSON documents for every value type, with canonical output.
//!
//! Output always goes through [`serde_json::Value`], whose objects keep
//! their keys sorted, so equal values render to identical bytes.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::boolean::{BAElement, BAHom, BoolAlg};
use crate::error::{contract, Error, Result};
use crate::field::{Backend, Scalar};
use crate::ring::{ProductRing, RingElement, RingHom};
use crate::space::{Arrow, ContinuousMap, EquivRelation, FiniteBoolSpace, InverseSystem};

/// Parses a document, reporting syntax and shape errors with their line and
/// column.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string().split(" at line ").next().unwrap_or_default().to_owned(),
    })
}

/// Canonical rendering: sorted keys, two-space indentation, trailing
/// newline.
pub fn render<T: Serialize>(doc: &T) -> Result<String> {
    let value = serde_json::to_value(doc).map_err(|e| contract(format!("cannot serialize: {e}")))?;
    let mut text = serde_json::to_string_pretty(&value).map_err(|e| contract(format!("cannot serialize: {e}")))?;
    text.push('\n');
    Ok(text)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDoc {
    pub field: String,
    pub points: Vec<String>,
}

impl RingDoc {
    pub fn from_ring(ring: &ProductRing) -> Self {
        RingDoc { field: ring.backend().tag().to_owned(), points: ring.points().to_vec() }
    }

    pub fn to_ring(&self) -> Result<ProductRing> {
        ProductRing::new(self.points.iter().cloned(), Backend::from_tag(&self.field)?)
    }
}

/// A coordinate given either as a string literal or as a bare JSON number.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Literal {
    Text(String),
    Number(serde_json::Number),
}

impl Literal {
    fn text(&self) -> String {
        match self {
            Literal::Text(s) => s.clone(),
            Literal::Number(n) => n.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDoc {
    pub coords: BTreeMap<String, Literal>,
}

impl ElementDoc {
    pub fn from_element<F: Scalar>(a: &RingElement<F>) -> Self {
        ElementDoc { coords: a.to_named().into_iter().map(|(k, v)| (k, Literal::Text(v))).collect() }
    }

    pub fn to_element<F: Scalar>(&self, ring: &ProductRing) -> Result<RingElement<F>> {
        let named = self.coords.iter().map(|(k, v)| (k.clone(), v.text())).collect();
        RingElement::from_named(ring, &named)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomDoc {
    /// Codomain index ↦ domain index.
    pub dual: BTreeMap<String, String>,
}

impl HomDoc {
    pub fn from_hom(f: &RingHom) -> Self {
        HomDoc { dual: f.to_names() }
    }

    pub fn to_hom(&self, domain: &ProductRing, codomain: &ProductRing) -> Result<RingHom> {
        RingHom::from_names(domain, codomain, &self.dual)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoolAlgDoc {
    pub atoms: Vec<String>,
}

impl BoolAlgDoc {
    pub fn from_alg(alg: &BoolAlg) -> Self {
        BoolAlgDoc { atoms: alg.atoms().to_vec() }
    }

    pub fn to_alg(&self) -> Result<BoolAlg> {
        BoolAlg::new(self.atoms.iter().cloned())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BAElementDoc {
    pub subset: Vec<String>,
}

impl BAElementDoc {
    pub fn from_element(b: &BAElement) -> Self {
        BAElementDoc { subset: b.atom_names() }
    }

    pub fn to_element(&self, alg: &BoolAlg) -> Result<BAElement> {
        alg.element_from_names(&self.subset)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BAHomDoc {
    /// Codomain atom ↦ domain atom.
    pub dual_atoms: BTreeMap<String, String>,
}

impl BAHomDoc {
    pub fn from_hom(h: &BAHom) -> Self {
        BAHomDoc { dual_atoms: h.to_names() }
    }

    pub fn to_hom(&self, domain: &BoolAlg, codomain: &BoolAlg) -> Result<BAHom> {
        BAHom::from_names(domain, codomain, &self.dual_atoms)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub points: Vec<String>,
}

impl SpaceDoc {
    pub fn from_space(space: &FiniteBoolSpace) -> Self {
        SpaceDoc { points: space.points().to_vec() }
    }

    pub fn to_space(&self) -> Result<FiniteBoolSpace> {
        FiniteBoolSpace::new(self.points.iter().cloned())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub map: BTreeMap<String, String>,
}

impl MapDoc {
    pub fn from_map(map: &ContinuousMap) -> Self {
        MapDoc { map: map.to_names() }
    }

    pub fn to_map(&self, domain: &FiniteBoolSpace, codomain: &FiniteBoolSpace) -> Result<ContinuousMap> {
        ContinuousMap::from_names(domain.clone(), codomain.clone(), &self.map)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionDoc {
    pub blocks: Vec<Vec<String>>,
}

impl PartitionDoc {
    pub fn from_relation(relation: &EquivRelation, space: &FiniteBoolSpace) -> Self {
        PartitionDoc { blocks: relation.named_blocks(space) }
    }

    pub fn to_relation(&self, space: &FiniteBoolSpace) -> Result<EquivRelation> {
        EquivRelation::from_blocks(space, &self.blocks)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub from: usize,
    pub to: usize,
    pub map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDoc {
    pub levels: Vec<SpaceDoc>,
    pub arrows: Vec<ArrowDoc>,
}

impl SystemDoc {
    pub fn from_system(system: &InverseSystem) -> Self {
        SystemDoc {
            levels: system.levels().iter().map(SpaceDoc::from_space).collect(),
            arrows: system
                .arrows()
                .iter()
                .map(|a| ArrowDoc { from: a.from, to: a.to, map: a.map.to_names() })
                .collect(),
        }
    }

    pub fn to_system(&self) -> Result<InverseSystem> {
        let levels = self.levels.iter().map(SpaceDoc::to_space).collect::<Result<Vec<_>>>()?;
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                let (from, to) = match (levels.get(a.from), levels.get(a.to)) {
                    (Some(f), Some(t)) => (f, t),
                    _ => return Err(contract(format!("arrow {} → {} names a missing level", a.from, a.to))),
                };
                Ok(Arrow { from: a.from, to: a.to, map: ContinuousMap::from_names(from.clone(), to.clone(), &a.map)? })
            })
            .collect::<Result<Vec<_>>>()?;
        InverseSystem::new(levels, arrows)
    }
}
