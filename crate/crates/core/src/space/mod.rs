//! Finite Boolean spaces.
//!
//! A finite space that is compact, Hausdorff and totally disconnected is
//! discrete, so a space is just its point set and every subset is clopen.
//! Likewise every function between finite discrete spaces is continuous.

mod limit;
mod partition;
mod profinite;

use std::collections::BTreeMap;
use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{contract, Result};

pub use limit::{limit, Arrow, InverseSystem, Limit};
pub use partition::{
    all_equiv_relations, induced_quotient_map, pullback_relation, quotient, transition, EquivRelation,
    MAX_PARTITION_POINTS,
};
pub use profinite::{delta_functor, DeltaReport, ProfiniteModel, FULL_LATTICE_POINTS};

/// A finite discrete space given by its named points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteBoolSpace {
    points: Arc<[String]>,
}

impl FiniteBoolSpace {
    pub fn new<I, S>(points: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let points: Vec<String> = points.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        if let Some(dup) = points.iter().find(|p| !seen.insert(p.as_str())) {
            return Err(contract(format!("duplicate point name {dup:?}")));
        }
        Ok(FiniteBoolSpace { points: points.into() })
    }

    /// The space `{prefix1, …, prefixN}`.
    pub fn numbered(prefix: &str, n: usize) -> Self {
        FiniteBoolSpace { points: (1..=n).map(|i| format!("{prefix}{i}")).collect() }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn name(&self, index: usize) -> &str {
        &self.points[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.points.iter().position(|p| p == name)
    }

    pub(crate) fn require_index(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| contract(format!("{name:?} is not a point of the space")))
    }
}

/// A total map between finite spaces; continuity is automatic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContinuousMap {
    domain: FiniteBoolSpace,
    codomain: FiniteBoolSpace,
    map: Vec<usize>,
}

impl ContinuousMap {
    pub fn new(domain: FiniteBoolSpace, codomain: FiniteBoolSpace, map: Vec<usize>) -> Result<Self> {
        if map.len() != domain.len() {
            return Err(contract(format!("map has {} entries for a domain of {} points", map.len(), domain.len())));
        }
        if let Some(&bad) = map.iter().find(|&&t| t >= codomain.len()) {
            return Err(contract(format!("image index {bad} outside the codomain")));
        }
        Ok(ContinuousMap { domain, codomain, map })
    }

    pub fn from_names(
        domain: FiniteBoolSpace,
        codomain: FiniteBoolSpace,
        table: &BTreeMap<String, String>,
    ) -> Result<Self> {
        if table.len() != domain.len() {
            return Err(contract("map must assign every domain point exactly once"));
        }
        let map = domain
            .points()
            .iter()
            .map(|p| {
                let image = table.get(p).ok_or_else(|| contract(format!("map has no image for {p:?}")))?;
                codomain.require_index(image)
            })
            .collect::<Result<Vec<_>>>()?;
        ContinuousMap::new(domain, codomain, map)
    }

    pub fn identity(space: &FiniteBoolSpace) -> Self {
        ContinuousMap { domain: space.clone(), codomain: space.clone(), map: (0..space.len()).collect() }
    }

    pub fn domain(&self) -> &FiniteBoolSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteBoolSpace {
        &self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, point: usize) -> usize {
        self.map[point]
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ContinuousMap) -> Result<ContinuousMap> {
        if first.codomain != self.domain {
            return Err(contract("maps are not composable"));
        }
        Ok(ContinuousMap {
            domain: first.domain.clone(),
            codomain: self.codomain.clone(),
            map: first.map.iter().map(|&y| self.map[y]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.len()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain.len()];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn inverse(&self) -> Result<ContinuousMap> {
        if !self.is_bijective() {
            return Err(contract("map is not a bijection"));
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Ok(ContinuousMap { domain: self.codomain.clone(), codomain: self.domain.clone(), map: inv })
    }

    /// The map as a name table, for serialization.
    pub fn to_names(&self) -> BTreeMap<String, String> {
        self.map
            .iter()
            .enumerate()
            .map(|(x, &y)| (self.domain.name(x).to_owned(), self.codomain.name(y).to_owned()))
            .collect()
    }
}

/// Every map between two finite spaces, in lexicographic order of tables.
pub fn all_maps(domain: &FiniteBoolSpace, codomain: &FiniteBoolSpace) -> Vec<ContinuousMap> {
    let n = domain.len();
    let m = codomain.len();
    if m == 0 {
        return if n == 0 { vec![ContinuousMap::identity(domain)] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut table = vec![0usize; n];
    loop {
        out.push(ContinuousMap { domain: domain.clone(), codomain: codomain.clone(), map: table.clone() });
        // odometer, last coordinate fastest
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            table[i] += 1;
            if table[i] < m {
                break;
            }
            table[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_points_rejected() {
        assert!(FiniteBoolSpace::new(["a", "a"]).is_err());
    }

    #[test]
    fn map_validation() {
        let x = FiniteBoolSpace::new(["p", "q"]).unwrap();
        assert!(ContinuousMap::new(x.clone(), x.clone(), vec![0]).is_err());
        assert!(ContinuousMap::new(x.clone(), x.clone(), vec![0, 2]).is_err());
        let mut table = BTreeMap::new();
        table.insert("p".to_owned(), "q".to_owned());
        assert!(ContinuousMap::from_names(x.clone(), x.clone(), &table).is_err());
        table.insert("q".to_owned(), "q".to_owned());
        let f = ContinuousMap::from_names(x.clone(), x, &table).unwrap();
        assert_eq!(f.table(), &[1, 1]);
        assert_eq!(f.to_names(), table);
    }

    #[test]
    fn map_counts() {
        let x = FiniteBoolSpace::numbered("x", 3);
        let y = FiniteBoolSpace::numbered("y", 2);
        let empty = FiniteBoolSpace::numbered("e", 0);
        assert_eq!(all_maps(&x, &y).len(), 8);
        assert_eq!(all_maps(&y, &x).len(), 9);
        assert_eq!(all_maps(&empty, &x).len(), 1);
        assert_eq!(all_maps(&x, &empty).len(), 0);
        assert_eq!(all_maps(&empty, &empty).len(), 1);
    }

    #[test]
    fn composition_and_inverse() {
        let x = FiniteBoolSpace::numbered("x", 3);
        let f = ContinuousMap::new(x.clone(), x.clone(), vec![1, 2, 0]).unwrap();
        let g = f.inverse().unwrap();
        assert_eq!(g.compose(&f).unwrap(), ContinuousMap::identity(&x));
        let c = ContinuousMap::new(x.clone(), x.clone(), vec![0, 0, 0]).unwrap();
        assert!(c.inverse().is_err());
        assert!(!c.is_surjective());
        assert!(!c.is_injective());
    }
}
