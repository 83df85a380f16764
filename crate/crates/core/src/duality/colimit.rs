//! Certifies `K^X` as the colimit of the directed system `K^{X/R}` over the
//! partitions `R` of a small space `X`.

use serde::Serialize;

use super::khat_of_map;
use crate::error::{check_bound, Result};
use crate::field::{Backend, Rational};
use crate::ring::linalg::rank;
use crate::ring::{RingElement, RingHom};
use crate::space::{all_equiv_relations, all_maps, quotient, transition, EquivRelation, FiniteBoolSpace};

/// Largest space certified.
pub const CERTIFIED_POINTS: usize = 4;

/// Largest cocone target `K^T` tried.
const COCONE_TARGET_POINTS: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColimitCertificate {
    pub points: usize,
    pub levels: usize,
    pub transitions: usize,
    /// Every partition is coarser than the diagonal.
    pub diagonal_is_finest: bool,
    /// `K^{X/Δ} → K^X` is an isomorphism.
    pub diagonal_inclusion_iso: bool,
    /// `ι_R ∘ k̂(μ_{R R′}) = ι_{R′}` for every refinement.
    pub cocone_commutes: bool,
    /// The images of the `ι_R` span `K^X`.
    pub jointly_surjective: bool,
    pub cocones_tested: usize,
    /// Each tested cocone factors through exactly one hom out of `K^X`.
    pub cocones_factor_uniquely: bool,
}

impl ColimitCertificate {
    pub fn passed(&self) -> bool {
        self.diagonal_is_finest
            && self.diagonal_inclusion_iso
            && self.cocone_commutes
            && self.jointly_surjective
            && self.cocones_factor_uniquely
    }
}

/// Builds the whole system over `𝓡_X` with its cocone into `K^X` and checks
/// the universal property against every cocone into `K^T`, `|T| ≤ 2`,
/// compared with every hom `K^X → K^T`.
pub fn colimit_certificate(space: &FiniteBoolSpace) -> Result<ColimitCertificate> {
    check_bound("colimit certification", space.len(), CERTIFIED_POINTS)?;
    let n = space.len();
    let relations = all_equiv_relations(space)?;
    let mut projections = Vec::with_capacity(relations.len());
    let mut inclusions = Vec::with_capacity(relations.len());
    for r in &relations {
        let (_, pi) = quotient(space, r)?;
        inclusions.push(khat_of_map(&pi, Backend::Rational)?);
        projections.push(pi);
    }
    let diagonal = EquivRelation::diagonal(n);
    let d = relations.iter().position(|r| *r == diagonal);
    let diagonal_is_finest = d.is_some() && relations.iter().all(|r| diagonal.is_finer_than(r));
    let diagonal_inclusion_iso = d.is_some_and(|d| projections[d].is_bijective());

    // arrows K^{X/R′} → K^{X/R} for R strictly finer than R′
    let mut arrows: Vec<(usize, usize, RingHom)> = Vec::new();
    for (i, fine) in relations.iter().enumerate() {
        for (j, coarse) in relations.iter().enumerate() {
            if i != j && fine.is_finer_than(coarse) {
                arrows.push((i, j, khat_of_map(&transition(space, fine, coarse)?, Backend::Rational)?));
            }
        }
    }
    let mut cocone_commutes = true;
    for (i, j, t) in &arrows {
        cocone_commutes &= inclusions[*i].compose(t)? == inclusions[*j];
    }

    let mut images = Vec::new();
    for iota in &inclusions {
        for s in 0..iota.domain().len() {
            let u = RingElement::<Rational>::unit_vector(iota.domain(), s)?;
            images.push(iota.apply(&u)?.coords().to_vec());
        }
    }
    let jointly_surjective = rank(&images, n) == n;

    let mut cocones_tested = 0;
    let mut cocones_factor_uniquely = true;
    for size in 0..=COCONE_TARGET_POINTS {
        let target = FiniteBoolSpace::numbered("t", size);
        let candidates =
            all_maps(&target, space).iter().map(|m| khat_of_map(m, Backend::Rational)).collect::<Result<Vec<_>>>()?;
        for mu in all_maps(&target, space) {
            // λ_R = k̂(π_R ∘ μ)
            let legs = projections
                .iter()
                .map(|pi| khat_of_map(&pi.compose(&mu)?, Backend::Rational))
                .collect::<Result<Vec<_>>>()?;
            let mut compatible = true;
            for (i, j, t) in &arrows {
                compatible &= legs[*i].compose(t)? == legs[*j];
            }
            let mut factorizations = 0;
            for u in &candidates {
                let mut factors = true;
                for (iota, leg) in inclusions.iter().zip(&legs) {
                    factors &= u.compose(iota)? == *leg;
                }
                factorizations += usize::from(factors);
            }
            cocones_tested += 1;
            cocones_factor_uniquely &= compatible && factorizations == 1;
        }
    }

    Ok(ColimitCertificate {
        points: n,
        levels: relations.len(),
        transitions: arrows.len(),
        diagonal_is_finest,
        diagonal_inclusion_iso,
        cocone_commutes,
        jointly_surjective,
        cocones_tested,
        cocones_factor_uniquely,
    })
}
