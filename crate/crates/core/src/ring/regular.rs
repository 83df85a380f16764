//! Quasi-inverses and the three equivalent forms of von Neumann regularity:
//!
//! 1. every `a` has some `x` with `a = a²x`;
//! 2. every principal ideal `(a)` is generated by an idempotent `e`, with
//!    witnesses `e·y = a` and `a·z = e`;
//! 3. every `a` has a unique `b` with `a = a²b` and `b = b²a`.

use super::{Idempotent, ProductRing, RingElement};
use crate::error::{check_bound, contract, Result};
use crate::field::Scalar;

/// The unique `b` with `a·b·a = a` and `b·a·b = b`: invert the nonzero
/// coordinates and keep the zeros.
pub fn quasi_inverse<F: Scalar>(a: &RingElement<F>) -> Result<RingElement<F>> {
    a.map(|c| if c.is_zero() { Ok(F::zero()) } else { c.field_inverse() })
}

/// An idempotent generator of `(a)` with its membership witnesses.
#[derive(Debug, Clone, PartialEq)]
pub struct IdempotentWitness<F> {
    pub idempotent: Idempotent<F>,
    /// `e·y = a`
    pub y: RingElement<F>,
    /// `a·z = e`
    pub z: RingElement<F>,
}

/// `e = a · quasi_inverse(a)`, with `y = a` and `z = quasi_inverse(a)`.
pub fn idempotent_of<F: Scalar>(a: &RingElement<F>) -> Result<IdempotentWitness<F>> {
    let b = quasi_inverse(a)?;
    let e = Idempotent::try_from_element(a.mul(&b)?)?;
    Ok(IdempotentWitness { idempotent: e, y: a.clone(), z: b })
}

/// Projects an arbitrary solution `x` of `a = a²x` down to the quasi-inverse
/// `b = a·x²`.
pub fn minimal_quasi_inverse_witness<F: Scalar>(a: &RingElement<F>, x: &RingElement<F>) -> Result<RingElement<F>> {
    if a.mul(a)?.mul(x)? != *a {
        return Err(contract("x does not satisfy a = a²x"));
    }
    a.mul(&x.mul(x)?)
}

/// Witnesses for all three regularity conditions, derived from a single
/// solution `x` of `a = a²x` the way the equivalence proof does:
/// `e = a·x`, `y = a`, `z = x`, `b = a·x²`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularityWitnesses<F> {
    pub a: RingElement<F>,
    pub x: RingElement<F>,
    pub e: RingElement<F>,
    pub y: RingElement<F>,
    pub z: RingElement<F>,
    pub b: RingElement<F>,
}

/// Builds the witnesses starting from the non-minimal solution
/// `x = quasi_inverse(a) + (1 − a·quasi_inverse(a))`, which is 1 wherever
/// `a` vanishes, so the chain of constructions is not the identity.
pub fn regularity_witnesses<F: Scalar>(a: &RingElement<F>) -> Result<RegularityWitnesses<F>> {
    let qi = quasi_inverse(a)?;
    let one = RingElement::one(a.ring())?;
    let x = qi.add(&one.sub(&a.mul(&qi)?)?)?;
    let e = a.mul(&x)?;
    let b = a.mul(&x.mul(&x)?)?;
    Ok(RegularityWitnesses { a: a.clone(), y: a.clone(), z: x.clone(), x, e, b })
}

impl<F: Scalar> RegularityWitnesses<F> {
    /// Names of the defining identities that fail; empty when all seven
    /// hold.
    pub fn failed_identities(&self) -> Result<Vec<&'static str>> {
        let (a, x, e, y, z, b) = (&self.a, &self.x, &self.e, &self.y, &self.z, &self.b);
        let checks = [
            ("a = a²x", a.mul(a)?.mul(x)? == *a),
            ("e² = e", e.mul(e)? == *e),
            ("e·y = a", e.mul(y)? == *a),
            ("a·z = e", a.mul(z)? == *e),
            ("a = a²b", a.mul(a)?.mul(b)? == *a),
            ("b = b²a", b.mul(b)?.mul(a)? == *b),
            ("b = a·x²", a.mul(&x.mul(x)?)? == *b),
        ];
        Ok(checks.into_iter().filter(|(_, ok)| !ok).map(|(name, _)| name).collect())
    }
}

/// All `2^|S|` idempotents, ordered by support bitmask (bit `i` ↔ index `i`).
pub fn idempotents<F: Scalar>(ring: &ProductRing, bound: usize) -> Result<Vec<Idempotent<F>>> {
    check_bound("idempotent enumeration", ring.len(), bound.min(63))?;
    (0..1u64 << ring.len()).map(|mask| Idempotent::from_mask(ring, mask)).collect()
}
