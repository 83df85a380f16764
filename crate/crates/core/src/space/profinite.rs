//! Every finite space as the limit of its discrete quotients.
//!
//! For a space `X` the partitions `𝓡_X`, ordered by inclusion of relations,
//! index the inverse system `{X/R, μ_{R_j R_i}}`. The map
//! `δ(x) = ([x]_R)_R` identifies `X` with the limit, and a map `f : X → X'`
//! induces `f̌` on limits through the pulled-back relations `R_f`.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::limit::{limit, Arrow, InverseSystem, Limit};
use super::partition::{induced_quotient_map, partitions_of, pullback_relation, quotient, EquivRelation};
use super::{ContinuousMap, FiniteBoolSpace};
use crate::error::{check_bound, contract, Result};

/// Largest space for which the complete partition lattice is used
/// (Bell(6) = 203 levels).
pub const FULL_LATTICE_POINTS: usize = 6;

/// Number of partitions drawn for larger spaces.
pub const SAMPLED_PARTITIONS: usize = 200;

/// The inverse system of quotients of a space, with its limit.
#[derive(Debug, Clone)]
pub struct ProfiniteModel {
    space: FiniteBoolSpace,
    relations: Vec<EquivRelation>,
    projections: Vec<ContinuousMap>,
    system: InverseSystem,
    limit: Limit,
    index: HashMap<EquivRelation, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaReport {
    pub points: usize,
    pub levels: usize,
    pub threads: usize,
    pub injective: bool,
    pub surjective: bool,
}

impl DeltaReport {
    pub fn is_homeomorphism(&self) -> bool {
        self.injective && self.surjective
    }
}

impl ProfiniteModel {
    /// Uses every partition of the space.
    pub fn full(space: &FiniteBoolSpace) -> Result<Self> {
        check_bound("space for the full partition lattice", space.len(), FULL_LATTICE_POINTS)?;
        Self::from_relations(space, partitions_of(space.len()))
    }

    /// Full lattice up to [`FULL_LATTICE_POINTS`], otherwise a seeded sample
    /// of [`SAMPLED_PARTITIONS`] partitions that always contains the
    /// diagonal and the total relation.
    pub fn for_space(space: &FiniteBoolSpace, seed: u64) -> Result<Self> {
        if space.len() <= FULL_LATTICE_POINTS {
            Self::full(space)
        } else {
            Self::sampled(space, seed, SAMPLED_PARTITIONS)
        }
    }

    pub fn sampled(space: &FiniteBoolSpace, seed: u64, count: usize) -> Result<Self> {
        let n = space.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut chosen: BTreeSet<EquivRelation> = [EquivRelation::diagonal(n), EquivRelation::total(n)].into();
        let mut attempts = 0;
        while chosen.len() < count && attempts < count * 50 {
            attempts += 1;
            let blocks = rng.gen_range(1..=n.max(1));
            chosen.insert(EquivRelation::from_labels((0..n).map(|_| rng.gen_range(0..blocks))));
        }
        Self::from_relations(space, chosen.into_iter().collect())
    }

    /// Builds the system over the given relations, adding an arrow for every
    /// refinement pair.
    pub fn from_relations(space: &FiniteBoolSpace, relations: Vec<EquivRelation>) -> Result<Self> {
        let mut levels = Vec::with_capacity(relations.len());
        let mut projections = Vec::with_capacity(relations.len());
        for r in &relations {
            let (q, p) = quotient(space, r)?;
            levels.push(q);
            projections.push(p);
        }
        let mut arrows = Vec::new();
        for (j, fine) in relations.iter().enumerate() {
            for (i, coarse) in relations.iter().enumerate() {
                if i == j {
                    continue;
                }
                if let Some(image) = fine.coarsening_map(coarse) {
                    arrows.push(Arrow {
                        from: j,
                        to: i,
                        map: ContinuousMap::new(levels[j].clone(), levels[i].clone(), image)?,
                    });
                }
            }
        }
        let system = InverseSystem::new(levels, arrows)?;
        let limit = limit(&system)?;
        let index = relations.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        Ok(ProfiniteModel { space: space.clone(), relations, projections, system, limit, index })
    }

    pub fn space(&self) -> &FiniteBoolSpace {
        &self.space
    }

    pub fn relations(&self) -> &[EquivRelation] {
        &self.relations
    }

    pub fn system(&self) -> &InverseSystem {
        &self.system
    }

    pub fn limit(&self) -> &Limit {
        &self.limit
    }

    pub fn level_of(&self, relation: &EquivRelation) -> Option<usize> {
        self.index.get(relation).copied()
    }

    /// `δ : X → X_∞`, `x ↦ ([x]_R)_R`.
    pub fn delta(&self) -> Result<ContinuousMap> {
        let table = (0..self.space.len())
            .map(|x| {
                let thread: Vec<usize> = self.projections.iter().map(|p| p.apply(x)).collect();
                self.limit.find(&thread).ok_or_else(|| contract("the classes of a point do not form a coherent thread"))
            })
            .collect::<Result<Vec<_>>>()?;
        ContinuousMap::new(self.space.clone(), self.limit.space().clone(), table)
    }

    pub fn delta_report(&self) -> Result<(ContinuousMap, DeltaReport)> {
        let delta = self.delta()?;
        let report = DeltaReport {
            points: self.space.len(),
            levels: self.relations.len(),
            threads: self.limit.threads().len(),
            injective: delta.is_injective(),
            surjective: delta.is_surjective(),
        };
        Ok((delta, report))
    }

    /// Checks that the limit projections form a cone:
    /// `μ_{R_i} = μ_{R_j R_i} ∘ μ_{R_j}` for every arrow.
    pub fn cone_commutes(&self) -> bool {
        self.system
            .arrows()
            .iter()
            .all(|a| a.map.compose(self.limit.projection(a.from)).is_ok_and(|m| &m == self.limit.projection(a.to)))
    }
}

/// The map `f̌ : X_∞ → X'_∞` determined by
/// `μ_{R'} ∘ f̌ = f_{R_f R'} ∘ μ_{R_f}` for every level `R'` of the target.
pub fn delta_functor(map: &ContinuousMap, source: &ProfiniteModel, target: &ProfiniteModel) -> Result<ContinuousMap> {
    if map.domain() != source.space() || map.codomain() != target.space() {
        return Err(contract("models do not match the map's domain and codomain"));
    }
    let per_level = target
        .relations()
        .iter()
        .map(|r| {
            let pulled = pullback_relation(map, r)?;
            let level = source
                .level_of(&pulled)
                .ok_or_else(|| contract("pulled-back relation is not a level of the source system"))?;
            Ok((level, induced_quotient_map(map, r)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let table = source
        .limit()
        .threads()
        .iter()
        .map(|thread| {
            let image: Vec<usize> = per_level.iter().map(|(level, f)| f.apply(thread[*level])).collect();
            target.limit().find(&image).ok_or_else(|| contract("induced components are not a coherent thread"))
        })
        .collect::<Result<Vec<_>>>()?;
    ContinuousMap::new(source.limit().space().clone(), target.limit().space().clone(), table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::all_maps;

    #[test]
    fn delta_on_small_spaces() {
        for n in 0..=FULL_LATTICE_POINTS {
            let x = FiniteBoolSpace::numbered("p", n);
            let model = ProfiniteModel::full(&x).unwrap();
            let (_, report) = model.delta_report().unwrap();
            assert!(report.is_homeomorphism(), "n = {n}");
            assert_eq!(report.threads, n);
            assert!(model.cone_commutes());
        }
        let x = FiniteBoolSpace::numbered("p", 6);
        assert_eq!(ProfiniteModel::full(&x).unwrap().relations().len(), 203);
        assert!(ProfiniteModel::full(&FiniteBoolSpace::numbered("p", 7)).is_err());
    }

    #[test]
    fn separating_partition_exists() {
        let x = FiniteBoolSpace::numbered("p", 4);
        for a in 0..4 {
            for b in 0..4 {
                if a != b {
                    let r = EquivRelation::from_labels((0..4).map(|z| usize::from(z != a)));
                    assert!(!r.related(a, b));
                }
            }
        }
        let model = ProfiniteModel::full(&x).unwrap();
        assert!(model.delta().unwrap().is_injective());
    }

    #[test]
    fn sampled_model_above_full_bound() {
        let x = FiniteBoolSpace::numbered("p", 8);
        let model = ProfiniteModel::for_space(&x, 3).unwrap();
        assert_eq!(model.relations().len(), SAMPLED_PARTITIONS);
        let (_, report) = model.delta_report().unwrap();
        assert!(report.is_homeomorphism());
        let again = ProfiniteModel::for_space(&x, 3).unwrap();
        assert_eq!(model.relations(), again.relations());
    }

    #[test]
    fn delta_functor_identity_and_naturality() {
        let x = FiniteBoolSpace::numbered("p", 3);
        let y = FiniteBoolSpace::numbered("q", 2);
        let mx = ProfiniteModel::full(&x).unwrap();
        let my = ProfiniteModel::full(&y).unwrap();
        let id = ContinuousMap::identity(&x);
        assert_eq!(delta_functor(&id, &mx, &mx).unwrap(), ContinuousMap::identity(mx.limit().space()));
        for f in all_maps(&x, &y) {
            let fc = delta_functor(&f, &mx, &my).unwrap();
            let lhs = fc.compose(&mx.delta().unwrap()).unwrap();
            let rhs = my.delta().unwrap().compose(&f).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
