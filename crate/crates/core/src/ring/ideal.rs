//! Ideals, primes and the spectrum of `K^S`.
//!
//! Every ideal of `K^S` is principal and generated by a unique idempotent,
//! so ideals are stored by that generator and enumerating them means
//! enumerating idempotents.

use super::regular::{idempotent_of, idempotents, quasi_inverse};
use super::{Idempotent, ProductRing, RingElement};
use crate::error::{check_bound, contract, Result};
use crate::field::{Backend, Rational, Scalar};
use crate::report::CheckReport;
use crate::space::FiniteBoolSpace;

/// The ideal `(e) = {a : a·e = a}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrincipalIdeal<F> {
    generator: Idempotent<F>,
}

impl<F: Scalar> PrincipalIdeal<F> {
    pub fn new(generator: Idempotent<F>) -> Self {
        PrincipalIdeal { generator }
    }

    /// `(a)`, normalized to its idempotent generator.
    pub fn generated_by(a: &RingElement<F>) -> Result<Self> {
        Ok(PrincipalIdeal::new(idempotent_of(a)?.idempotent))
    }

    pub fn generator(&self) -> &Idempotent<F> {
        &self.generator
    }

    pub fn contains(&self, a: &RingElement<F>) -> Result<bool> {
        Ok(a.mul(self.generator.element())? == *a)
    }

    pub fn is_proper(&self) -> bool {
        !self.generator.element().is_unit()
    }

    pub fn is_contained_in(&self, other: &PrincipalIdeal<F>) -> Result<bool> {
        other.contains(self.generator.element())
    }
}

/// One ideal per idempotent generator.
pub fn all_ideals<F: Scalar>(ring: &ProductRing, bound: usize) -> Result<Vec<PrincipalIdeal<F>>> {
    Ok(idempotents(ring, bound)?.into_iter().map(PrincipalIdeal::new).collect())
}

/// Primality tested on a set of witnesses: the ideal is proper and
/// `ab ∈ I ⇒ a ∈ I ∨ b ∈ I` for all witness pairs.
///
/// With all idempotents as witnesses this decides primality in `K^S`,
/// since `a ∈ I ⇔ e(a) ∈ I` and `e(ab) = e(a)·e(b)`.
pub fn prime_test<F: Scalar>(ideal: &PrincipalIdeal<F>, witnesses: &[RingElement<F>]) -> Result<bool> {
    if !ideal.is_proper() {
        return Ok(false);
    }
    for a in witnesses {
        let a_in = ideal.contains(a)?;
        for b in witnesses {
            if ideal.contains(&a.mul(b)?)? && !a_in && !ideal.contains(b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Maximality among a complete list of ideals.
pub fn is_maximal<F: Scalar>(ideal: &PrincipalIdeal<F>, all: &[PrincipalIdeal<F>]) -> Result<bool> {
    if !ideal.is_proper() {
        return Ok(false);
    }
    for other in all {
        if other.is_proper() && other != ideal && ideal.is_contained_in(other)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A point of the spectrum: the prime `p_s = {a : a_s = 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePoint {
    pub index: usize,
}

impl PrimePoint {
    pub fn ideal<F: Scalar>(&self, ring: &ProductRing) -> Result<PrincipalIdeal<F>> {
        if self.index >= ring.len() {
            return Err(contract(format!("index {} outside the ring", self.index)));
        }
        let generator = Idempotent::indicator(ring, (0..ring.len()).filter(|&i| i != self.index))?;
        Ok(PrincipalIdeal::new(generator))
    }
}

pub fn prime_points(ring: &ProductRing) -> Vec<PrimePoint> {
    (0..ring.len()).map(|index| PrimePoint { index }).collect()
}

/// `Spec(K^S)`: the discrete space on `S`, one point per prime `p_s`.
pub fn spec(ring: &ProductRing, bound: usize) -> Result<FiniteBoolSpace> {
    ring.require_backend(Backend::Rational)?;
    check_bound("spectrum", ring.len(), bound)?;
    FiniteBoolSpace::new(ring.points().iter().cloned())
}

/// `D(a) = {p : a ∉ p}`, the indices where `a` does not vanish.
pub fn d_infinity<F: Scalar>(a: &RingElement<F>) -> Vec<usize> {
    a.support()
}

/// Checks that `K^S / p_s ≅ K` through the evaluation `a ↦ a_s`, on the
/// given sample elements.
pub fn residue_field_check(
    ring: &ProductRing,
    point: PrimePoint,
    samples: &[RingElement<Rational>],
) -> Result<CheckReport> {
    ring.require_backend(Backend::Rational)?;
    let name = format!("residue field at {}", ring.name(point.index));
    let mut report = CheckReport::new(name);
    let prime: PrincipalIdeal<Rational> = point.ideal(ring)?;
    let s = point.index;

    // surjective: each scalar lifts to a constant
    for a in samples {
        let c = a.coord(s).clone();
        let lift = RingElement::constant(ring, c.clone())?;
        report.record(*lift.coord(s) == c, || format!("constant {c} does not lift"));
    }
    for a in samples {
        // kernel is exactly p_s
        let in_kernel = a.coord(s).is_zero();
        report.record(prime.contains(a)? == in_kernel, || format!("kernel and p_s disagree on {:?}", a.to_named()));
        // nonzero classes are invertible
        if !in_kernel {
            let b = quasi_inverse(a)?;
            report.record(a.mul(&b)?.coord(s).is_one(), || format!("class of {:?} has no inverse", a.to_named()));
        }
    }
    // well defined: equal residues differ by an element of p_s
    for pair in samples.windows(2) {
        if pair[0].coord(s) == pair[1].coord(s) {
            let diff = pair[0].sub(&pair[1])?;
            report.record(prime.contains(&diff)?, || "equal residues differ outside p_s".to_owned());
        }
    }
    Ok(report)
}
