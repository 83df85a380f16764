//! Von Neumann regular rings realized as finite products `K^S`.
//!
//! Every operation is coordinatewise: an element is a family `S → K`, an
//! idempotent is a `{0,1}`-valued family, and a unital homomorphism
//! `K^S → K^T` is precomposition with a map `T → S`.

mod checks;
mod hom;
mod ideal;
pub(crate) mod linalg;
mod localize;
mod regular;
mod smooth;

use std::collections::BTreeMap;
use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{contract, Result};
use crate::field::{Backend, Scalar};
use crate::space::FiniteBoolSpace;

pub use checks::{equalizer, reducedness_check, Equalizer, SampledRing};
pub use hom::RingHom;
pub use ideal::{
    all_ideals, d_infinity, is_maximal, prime_points, prime_test, residue_field_check, spec, PrimePoint, PrincipalIdeal,
};
pub use localize::{factor_through, localization_report, localize_at_element, localize_at_idempotent, Localization};
pub use regular::{
    idempotent_of, idempotents, minimal_quasi_inverse_witness, quasi_inverse, regularity_witnesses, IdempotentWitness,
    RegularityWitnesses,
};
pub use smooth::{
    check_composition_axiom, check_projection_axiom, interpret, Componentwise, CompositionSettings, Interpreter,
};

/// Default bound on `|S|` for enumerations over idempotents.
pub const DEFAULT_MAX_POINTS: usize = 20;

/// The product ring `K^S` over a finite ordered index set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductRing {
    points: Arc<[String]>,
    backend: Backend,
}

impl ProductRing {
    pub fn new<I, S>(points: I, backend: Backend) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let points: Vec<String> = points.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        if let Some(dup) = points.iter().find(|p| !seen.insert(p.as_str())) {
            return Err(contract(format!("duplicate index name {dup:?}")));
        }
        Ok(ProductRing { points: points.into(), backend })
    }

    /// `K^{s1, …, sn}`.
    pub fn numbered(n: usize, backend: Backend) -> Self {
        ProductRing { points: (1..=n).map(|i| format!("s{i}")).collect(), backend }
    }

    pub fn rational(n: usize) -> Self {
        Self::numbered(n, Backend::Rational)
    }

    pub fn real(n: usize) -> Self {
        Self::numbered(n, Backend::Real)
    }

    /// The ring `K^X` indexed by the points of a space.
    pub fn over_space(space: &FiniteBoolSpace, backend: Backend) -> Self {
        ProductRing { points: space.points().into(), backend }
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The zero ring `K^∅ = {0}`.
    pub fn is_trivial(&self) -> bool {
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
        self.index_of(name).ok_or_else(|| contract(format!("{name:?} is not an index of the ring")))
    }

    pub(crate) fn require_backend(&self, backend: Backend) -> Result<()> {
        if self.backend != backend {
            return Err(contract(format!("operation needs a ring over {backend}, got one over {}", self.backend)));
        }
        Ok(())
    }
}

/// An element `a ∈ K^S`.
#[derive(Debug, Clone, PartialEq)]
pub struct RingElement<F> {
    ring: ProductRing,
    coords: Vec<F>,
}

impl<F: Scalar> RingElement<F> {
    pub fn new(ring: &ProductRing, coords: Vec<F>) -> Result<Self> {
        ring.require_backend(F::BACKEND)?;
        if coords.len() != ring.len() {
            return Err(contract(format!("{} coordinates for a ring with {} indices", coords.len(), ring.len())));
        }
        Ok(RingElement { ring: ring.clone(), coords })
    }

    pub fn from_fn(ring: &ProductRing, f: impl FnMut(usize) -> F) -> Result<Self> {
        Self::new(ring, (0..ring.len()).map(f).collect())
    }

    pub fn zero(ring: &ProductRing) -> Result<Self> {
        Self::from_fn(ring, |_| F::zero())
    }

    pub fn one(ring: &ProductRing) -> Result<Self> {
        Self::from_fn(ring, |_| F::one())
    }

    /// The diagonal element `(c, …, c)`.
    pub fn constant(ring: &ProductRing, value: F) -> Result<Self> {
        Self::from_fn(ring, |_| value.clone())
    }

    /// The basis vector `δ_s`.
    pub fn unit_vector(ring: &ProductRing, index: usize) -> Result<Self> {
        if index >= ring.len() {
            return Err(contract(format!("index {index} outside the ring")));
        }
        Self::from_fn(ring, |i| if i == index { F::one() } else { F::zero() })
    }

    /// Parses `{"s1": "2", …}`; every index must be present exactly once.
    pub fn from_named(ring: &ProductRing, coords: &BTreeMap<String, String>) -> Result<Self> {
        if coords.len() != ring.len() {
            return Err(contract("element must give exactly one coordinate per index"));
        }
        let values = ring
            .points()
            .iter()
            .map(|p| {
                let text = coords.get(p).ok_or_else(|| contract(format!("missing coordinate {p:?}")))?;
                F::parse_literal(text)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, values)
    }

    pub fn to_named(&self) -> BTreeMap<String, String> {
        self.ring.points().iter().zip(&self.coords).map(|(p, c)| (p.clone(), c.to_string())).collect()
    }

    pub fn ring(&self) -> &ProductRing {
        &self.ring
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    pub fn coord(&self, index: usize) -> &F {
        &self.coords[index]
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(contract("elements belong to different rings"));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&F, &F) -> Result<F>) -> Result<Self> {
        self.same_ring(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| op(a, b)).collect::<Result<Vec<_>>>()?;
        Ok(RingElement { ring: self.ring.clone(), coords })
    }

    pub fn map(&self, op: impl Fn(&F) -> Result<F>) -> Result<Self> {
        let coords = self.coords.iter().map(op).collect::<Result<Vec<_>>>()?;
        Ok(RingElement { ring: self.ring.clone(), coords })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, F::field_add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, F::field_sub)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, F::field_mul)
    }

    pub fn neg(&self) -> Self {
        RingElement { ring: self.ring.clone(), coords: self.coords.iter().map(F::field_neg).collect() }
    }

    pub fn pow(&self, exponent: u32) -> Result<Self> {
        let mut acc = Self::one(&self.ring)?;
        for _ in 0..exponent {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(F::is_zero)
    }

    /// Units of `K^S` are the elements with no zero coordinate.
    pub fn is_unit(&self) -> bool {
        !self.coords.iter().any(F::is_zero)
    }

    /// Indices where the element does not vanish.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coords.len()).filter(|&i| !self.coords[i].is_zero()).collect()
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self).is_ok_and(|sq| &sq == self)
    }
}

/// An element with `e·e = e`, i.e. every coordinate is 0 or 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Idempotent<F>(RingElement<F>);

impl<F: Scalar> Idempotent<F> {
    /// Accepts an element only if both characterizations hold: coordinates
    /// in `{0, 1}` and `e·e = e`.
    pub fn try_from_element(element: RingElement<F>) -> Result<Self> {
        let coordinatewise = element.coords.iter().all(|c| c.is_zero() || c.is_one());
        if !coordinatewise || !element.is_idempotent() {
            return Err(contract("element is not idempotent"));
        }
        Ok(Idempotent(element))
    }

    /// The indicator of a set of indices.
    pub fn indicator<I: IntoIterator<Item = usize>>(ring: &ProductRing, members: I) -> Result<Self> {
        let mut coords = vec![F::zero(); ring.len()];
        for i in members {
            if i >= ring.len() {
                return Err(contract(format!("index {i} outside the ring")));
            }
            coords[i] = F::one();
        }
        Ok(Idempotent(RingElement::new(ring, coords)?))
    }

    /// Indicator of the indices whose bits are set.
    pub fn from_mask(ring: &ProductRing, mask: u64) -> Result<Self> {
        if ring.len() < 64 && mask >> ring.len() != 0 {
            return Err(contract("mask has bits outside the ring"));
        }
        Self::indicator(ring, (0..ring.len().min(64)).filter(|&i| mask >> i & 1 == 1))
    }

    pub fn zero(ring: &ProductRing) -> Result<Self> {
        Ok(Idempotent(RingElement::zero(ring)?))
    }

    pub fn one(ring: &ProductRing) -> Result<Self> {
        Ok(Idempotent(RingElement::one(ring)?))
    }

    pub fn element(&self) -> &RingElement<F> {
        &self.0
    }

    pub fn into_element(self) -> RingElement<F> {
        self.0
    }

    pub fn ring(&self) -> &ProductRing {
        &self.0.ring
    }

    pub fn support(&self) -> Vec<usize> {
        self.0.support()
    }

    /// Support as a bitmask; only meaningful for rings with at most 64
    /// indices.
    pub fn mask(&self) -> u64 {
        self.0.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).fold(0u64, |m, (i, _)| m | 1 << i)
    }

    /// `1 − e`.
    pub fn complement(&self) -> Self {
        Idempotent(RingElement {
            ring: self.0.ring.clone(),
            coords: self.0.coords.iter().map(|c| if c.is_zero() { F::one() } else { F::zero() }).collect(),
        })
    }
}
