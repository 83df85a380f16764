//! Localization at an idempotent or at an element.
//!
//! Inverting `e` in `K^S` gives `A{e⁻¹} ≅ A/(1−e) ≅ A·e ≅ K^{S'}` with
//! `S' = {s : e_s = 1}`; inverting `a` is the same as inverting its
//! idempotent.

use super::linalg::{nullspace, rank};
use super::regular::idempotent_of;
use super::{Idempotent, ProductRing, RingElement, RingHom};
use crate::error::{contract, Result};
use crate::field::{Rational, Scalar};
use crate::report::CheckReport;

/// The localized ring and the canonical map into it.
#[derive(Debug, Clone, PartialEq)]
pub struct Localization {
    pub ring: ProductRing,
    pub hom: RingHom,
    /// Support of the inverted idempotent, as indices of the original ring.
    pub kept: Vec<usize>,
}

pub fn localize_at_idempotent<F: Scalar>(ring: &ProductRing, e: &Idempotent<F>) -> Result<Localization> {
    if e.ring() != ring {
        return Err(contract("idempotent is not an element of the ring"));
    }
    let kept = e.support();
    let local = ProductRing::new(kept.iter().map(|&s| ring.name(s).to_owned()), ring.backend())?;
    let hom = RingHom::new(ring, &local, kept.clone())?;
    Ok(Localization { ring: local, hom, kept })
}

pub fn localize_at_element<F: Scalar>(a: &RingElement<F>) -> Result<Localization> {
    let witness = idempotent_of(a)?;
    localize_at_idempotent(a.ring(), &witness.idempotent)
}

/// The unique `h` with `h ∘ loc = g`, for a hom `g` that inverts `a`.
pub fn factor_through<F: Scalar>(loc: &Localization, g: &RingHom, a: &RingElement<F>) -> Result<RingHom> {
    if g.domain() != loc.hom.domain() {
        return Err(contract("hom does not start at the localized ring"));
    }
    if !g.apply(a)?.is_unit() {
        return Err(contract("hom does not invert the element"));
    }
    let dual = g
        .dual()
        .iter()
        .map(|s| {
            loc.kept.iter().position(|k| k == s).ok_or_else(|| contract("hom does not factor through the localization"))
        })
        .collect::<Result<Vec<_>>>()?;
    RingHom::new(&loc.ring, g.codomain(), dual)
}

fn coordinates(a: &RingElement<Rational>) -> Vec<Rational> {
    a.coords().to_vec()
}

/// Verifies `A·e ≅ A/(1−e) ≅ K^{S'}` by explicit linear algebra: the
/// restriction map is onto, its kernel (computed by row reduction) is the
/// ideal `(1−e)`, and it is injective on `A·e`.
pub fn localization_report(ring: &ProductRing, e: &Idempotent<Rational>) -> Result<CheckReport> {
    let loc = localize_at_idempotent(ring, e)?;
    let n = ring.len();
    let mut report = CheckReport::new(format!("localization at {:?}", e.element().to_named()));
    let basis: Vec<RingElement<Rational>> = (0..n).map(|s| RingElement::unit_vector(ring, s)).collect::<Result<_>>()?;
    let images: Vec<Vec<Rational>> =
        basis.iter().map(|b| loc.hom.apply(b).map(|v| coordinates(&v))).collect::<Result<_>>()?;

    let m = loc.ring.len();
    report.record(rank(&images, m) == m, || "restriction is not surjective".to_owned());

    // matrix of the restriction: rows indexed by S', columns by S
    let matrix: Vec<Vec<Rational>> = (0..m).map(|t| (0..n).map(|s| images[s][t].clone()).collect()).collect();
    let kernel = nullspace(&matrix, n);
    let complement = e.complement();
    for v in &kernel {
        let v = RingElement::new(ring, v.clone())?;
        let in_ideal = v.mul(complement.element())? == v;
        report.record(in_ideal, || format!("kernel vector {:?} is not in (1-e)", v.to_named()));
    }
    report.record(kernel.len() == n - m, || format!("kernel has dimension {}, expected {}", kernel.len(), n - m));
    report.record(loc.hom.apply(complement.element())?.is_zero(), || "1-e is not in the kernel".to_owned());
    // (1-e) = span of the kernel
    let ideal_basis: Vec<Vec<Rational>> =
        basis.iter().map(|b| b.mul(complement.element()).map(|v| coordinates(&v))).collect::<Result<_>>()?;
    let mut joint = kernel.clone();
    joint.extend(ideal_basis.iter().cloned());
    report.record(rank(&joint, n) == kernel.len(), || "(1-e) is larger than the kernel".to_owned());

    // injective on A·e
    let ae_images: Vec<Vec<Rational>> = basis
        .iter()
        .map(|b| {
            let v = b.mul(e.element())?;
            loc.hom.apply(&v).map(|w| coordinates(&w))
        })
        .collect::<Result<_>>()?;
    report.record(rank(&ae_images, m) == e.support().len(), || "A·e does not map isomorphically".to_owned());
    Ok(report)
}
