use std::collections::BTreeMap;

use super::{ProductRing, RingElement};
use crate::error::{contract, Result};
use crate::field::Scalar;
use crate::space::{ContinuousMap, FiniteBoolSpace};

/// A unital homomorphism `K^S → K^T`, stored as its dual index map
/// `T → S`: `(f a)_t = a_{dual(t)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingHom {
    domain: ProductRing,
    codomain: ProductRing,
    dual: Vec<usize>,
}

impl RingHom {
    pub fn new(domain: &ProductRing, codomain: &ProductRing, dual: Vec<usize>) -> Result<Self> {
        if domain.backend() != codomain.backend() {
            return Err(contract("homomorphism between rings over different fields"));
        }
        if dual.len() != codomain.len() {
            return Err(contract(format!(
                "dual map has {} entries for a codomain with {} indices",
                dual.len(),
                codomain.len()
            )));
        }
        if let Some(&bad) = dual.iter().find(|&&s| s >= domain.len()) {
            return Err(contract(format!("dual map sends an index to {bad}, outside the domain")));
        }
        Ok(RingHom { domain: domain.clone(), codomain: codomain.clone(), dual })
    }

    /// Builds a hom from a `{"t": "s", …}` table.
    pub fn from_names(domain: &ProductRing, codomain: &ProductRing, table: &BTreeMap<String, String>) -> Result<Self> {
        if table.len() != codomain.len() {
            return Err(contract("dual map must assign every codomain index exactly once"));
        }
        let dual = codomain
            .points()
            .iter()
            .map(|t| {
                let s = table.get(t).ok_or_else(|| contract(format!("dual map has no entry for {t:?}")))?;
                domain.require_index(s)
            })
            .collect::<Result<Vec<_>>>()?;
        RingHom::new(domain, codomain, dual)
    }

    pub fn identity(ring: &ProductRing) -> Self {
        RingHom { domain: ring.clone(), codomain: ring.clone(), dual: (0..ring.len()).collect() }
    }

    pub fn domain(&self) -> &ProductRing {
        &self.domain
    }

    pub fn codomain(&self) -> &ProductRing {
        &self.codomain
    }

    pub fn dual(&self) -> &[usize] {
        &self.dual
    }

    pub fn to_names(&self) -> BTreeMap<String, String> {
        self.dual
            .iter()
            .enumerate()
            .map(|(t, &s)| (self.codomain.name(t).to_owned(), self.domain.name(s).to_owned()))
            .collect()
    }

    pub fn apply<F: Scalar>(&self, a: &RingElement<F>) -> Result<RingElement<F>> {
        if a.ring() != &self.domain {
            return Err(contract("element is not in the domain of the homomorphism"));
        }
        RingElement::new(&self.codomain, self.dual.iter().map(|&s| a.coord(s).clone()).collect())
    }

    /// `self ∘ first`; dual maps compose in the opposite order.
    pub fn compose(&self, first: &RingHom) -> Result<RingHom> {
        if first.codomain != self.domain {
            return Err(contract("homomorphisms are not composable"));
        }
        Ok(RingHom {
            domain: first.domain.clone(),
            codomain: self.codomain.clone(),
            dual: self.dual.iter().map(|&t| first.dual[t]).collect(),
        })
    }

    /// The induced map on spectra, `Spec(codomain) → Spec(domain)`,
    /// `p_t ↦ f⁻¹[p_t] = p_{dual(t)}`.
    pub fn spec_map(&self) -> Result<ContinuousMap> {
        let from = FiniteBoolSpace::new(self.codomain.points().iter().cloned())?;
        let to = FiniteBoolSpace::new(self.domain.points().iter().cloned())?;
        ContinuousMap::new(from, to, self.dual.clone())
    }
}
