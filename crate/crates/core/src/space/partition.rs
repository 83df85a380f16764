//! Equivalence relations on finite spaces and the maps they induce.

use super::{ContinuousMap, FiniteBoolSpace};
use crate::error::{check_bound, contract, Result};

/// Largest space whose full partition lattice we enumerate (Bell(8) = 4140).
pub const MAX_PARTITION_POINTS: usize = 8;

/// An equivalence relation on `{0, …, n-1}`, stored as a restricted growth
/// string: `labels[x]` is the block of `x`, blocks numbered by first
/// occurrence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EquivRelation {
    labels: Vec<usize>,
    block_count: usize,
}

impl EquivRelation {
    /// Canonicalizes an arbitrary labelling into block form.
    pub fn from_labels<I: IntoIterator<Item = usize>>(labels: I) -> Self {
        let mut renumber = std::collections::HashMap::new();
        let labels: Vec<usize> = labels
            .into_iter()
            .map(|l| {
                let next = renumber.len();
                *renumber.entry(l).or_insert(next)
            })
            .collect();
        EquivRelation { block_count: renumber.len(), labels }
    }

    /// Builds a relation from named blocks, which must partition the space.
    pub fn from_blocks(space: &FiniteBoolSpace, blocks: &[Vec<String>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; space.len()];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(contract("partition has an empty block"));
            }
            for name in block {
                let x = space.require_index(name)?;
                if labels[x] != usize::MAX {
                    return Err(contract(format!("point {name:?} occurs in two blocks")));
                }
                labels[x] = b;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(contract(format!("point {:?} is not covered by the partition", space.name(x))));
        }
        Ok(EquivRelation::from_labels(labels))
    }

    /// The identity relation: every point alone.
    pub fn diagonal(n: usize) -> Self {
        EquivRelation { labels: (0..n).collect(), block_count: n }
    }

    /// The relation with a single block.
    pub fn total(n: usize) -> Self {
        EquivRelation { labels: vec![0; n], block_count: usize::from(n > 0) }
    }

    /// Number of points of the underlying set.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.labels[x]
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.labels[x] == self.labels[y]
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count];
        for (x, &b) in self.labels.iter().enumerate() {
            blocks[b].push(x);
        }
        blocks
    }

    /// `self ⊆ other` as subsets of `X × X`, i.e. every block of `self` lies
    /// inside a block of `other`.
    pub fn is_finer_than(&self, other: &EquivRelation) -> bool {
        self.coarsening_map(other).is_some()
    }

    pub(crate) fn coarsening_map(&self, other: &EquivRelation) -> Option<Vec<usize>> {
        if self.len() != other.len() {
            return None;
        }
        let mut image = vec![usize::MAX; self.block_count];
        for (x, &b) in self.labels.iter().enumerate() {
            let target = other.labels[x];
            if image[b] == usize::MAX {
                image[b] = target;
            } else if image[b] != target {
                return None;
            }
        }
        Some(image)
    }

    pub fn named_blocks(&self, space: &FiniteBoolSpace) -> Vec<Vec<String>> {
        self.blocks().into_iter().map(|b| b.into_iter().map(|x| space.name(x).to_owned()).collect()).collect()
    }
}

/// Every equivalence relation on the points of `space`, in lexicographic
/// order of restricted growth strings.
pub fn all_equiv_relations(space: &FiniteBoolSpace) -> Result<Vec<EquivRelation>> {
    check_bound("partition lattice", space.len(), MAX_PARTITION_POINTS)?;
    Ok(partitions_of(space.len()))
}

pub(crate) fn partitions_of(n: usize) -> Vec<EquivRelation> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    // prefix_max[i] = max(labels[0..=i])
    let mut prefix_max = vec![0usize; n];
    loop {
        out.push(EquivRelation { labels: labels.clone(), block_count: prefix_max.last().map_or(0, |m| m + 1) });
        let mut i = n;
        loop {
            if i <= 1 {
                return out;
            }
            i -= 1;
            if labels[i] <= prefix_max[i - 1] {
                labels[i] += 1;
                prefix_max[i] = prefix_max[i - 1].max(labels[i]);
                for j in i + 1..n {
                    labels[j] = 0;
                    prefix_max[j] = prefix_max[i];
                }
                break;
            }
        }
    }
}

fn block_name(space: &FiniteBoolSpace, block: &[usize]) -> String {
    let names: Vec<&str> = block.iter().map(|&x| space.name(x)).collect();
    format!("{{{}}}", names.join(","))
}

fn check_size(space: &FiniteBoolSpace, relation: &EquivRelation) -> Result<()> {
    if relation.len() != space.len() {
        return Err(contract(format!(
            "relation on {} points applied to a space of {} points",
            relation.len(),
            space.len()
        )));
    }
    Ok(())
}

/// The quotient space `X/R` together with the projection `x ↦ [x]`.
pub fn quotient(space: &FiniteBoolSpace, relation: &EquivRelation) -> Result<(FiniteBoolSpace, ContinuousMap)> {
    check_size(space, relation)?;
    let names: Vec<String> = relation.blocks().iter().map(|b| block_name(space, b)).collect();
    let quotient = FiniteBoolSpace::new(names)?;
    let projection = ContinuousMap::new(space.clone(), quotient.clone(), relation.labels.clone())?;
    Ok((quotient, projection))
}

/// The surjection `X/R_fine → X/R_coarse`, `[x] ↦ [x]`, defined when
/// `R_fine ⊆ R_coarse`.
pub fn transition(space: &FiniteBoolSpace, fine: &EquivRelation, coarse: &EquivRelation) -> Result<ContinuousMap> {
    check_size(space, fine)?;
    check_size(space, coarse)?;
    let image = fine.coarsening_map(coarse).ok_or_else(|| contract("the first relation does not refine the second"))?;
    let (from, _) = quotient(space, fine)?;
    let (to, _) = quotient(space, coarse)?;
    ContinuousMap::new(from, to, image)
}

/// `R_f = (f × f)⁻¹[R']`: points related when their images are.
pub fn pullback_relation(map: &ContinuousMap, relation: &EquivRelation) -> Result<EquivRelation> {
    check_size(map.codomain(), relation)?;
    Ok(EquivRelation::from_labels(map.table().iter().map(|&y| relation.block_of(y))))
}

/// The map `X/R_f → X'/R'`, `[x] ↦ [f(x)]`. It is always injective.
pub fn induced_quotient_map(map: &ContinuousMap, relation: &EquivRelation) -> Result<ContinuousMap> {
    let pulled = pullback_relation(map, relation)?;
    let (from, _) = quotient(map.domain(), &pulled)?;
    let (to, _) = quotient(map.codomain(), relation)?;
    let mut table = vec![0; pulled.block_count()];
    for (x, &b) in pulled.labels().iter().enumerate() {
        table[b] = relation.block_of(map.apply(x));
    }
    let induced = ContinuousMap::new(from, to, table)?;
    debug_assert!(induced.is_injective());
    Ok(induced)
}
