//! The Boolean algebra of idempotents of `K^S` and its identification with
//! the clopen subsets of the spectrum.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{clopen, clopen_of_map, BAElement, BAHom, BoolAlg, MAX_ATOMS};
use crate::error::{check_bound, contract, Result};
use crate::field::{Backend, Rational, Scalar};
use crate::report::CheckReport;
use crate::ring::{d_infinity, spec, Idempotent, ProductRing, RingElement, RingHom};
use crate::space::FiniteBoolSpace;

/// How the join of two idempotents is computed from ring operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum JoinRule {
    /// `e + e′ − e·e′`.
    #[default]
    Standard,
    /// `e + e′ − 2·e·e′`. Still idempotent but computes the symmetric
    /// difference; only used to check that the verification suites notice.
    SymmetricDifference,
}

/// Lattice operations on idempotents derived from the ring structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IdempotentLattice {
    pub join_rule: JoinRule,
}

impl IdempotentLattice {
    pub fn with_join(join_rule: JoinRule) -> Self {
        IdempotentLattice { join_rule }
    }

    /// `e·e′`.
    pub fn meet<F: Scalar>(&self, e: &Idempotent<F>, f: &Idempotent<F>) -> Result<Idempotent<F>> {
        Idempotent::try_from_element(e.element().mul(f.element())?)
    }

    pub fn join<F: Scalar>(&self, e: &Idempotent<F>, f: &Idempotent<F>) -> Result<Idempotent<F>> {
        let (a, b) = (e.element(), f.element());
        let ab = a.mul(b)?;
        let sum = a.add(b)?;
        let value = match self.join_rule {
            JoinRule::Standard => sum.sub(&ab)?,
            JoinRule::SymmetricDifference => sum.sub(&ab.add(&ab)?)?,
        };
        Idempotent::try_from_element(value)
    }

    /// `1 − e`.
    pub fn complement<F: Scalar>(&self, e: &Idempotent<F>) -> Result<Idempotent<F>> {
        Idempotent::try_from_element(RingElement::one(e.ring())?.sub(e.element())?)
    }
}

/// The idempotents of `K^S` viewed as the powerset algebra on `S`, with
/// `e ↔ {s : e_s = 1}`.
#[derive(Debug, Clone)]
pub struct IdempotentAlgebra {
    ring: ProductRing,
    algebra: BoolAlg,
    lattice: IdempotentLattice,
}

pub fn idempotent_algebra(ring: &ProductRing, bound: usize, lattice: IdempotentLattice) -> Result<IdempotentAlgebra> {
    ring.require_backend(Backend::Rational)?;
    check_bound("idempotent algebra", ring.len(), bound.min(MAX_ATOMS))?;
    Ok(IdempotentAlgebra { ring: ring.clone(), algebra: BoolAlg::with_atoms(ring.points().to_vec())?, lattice })
}

impl IdempotentAlgebra {
    pub fn ring(&self) -> &ProductRing {
        &self.ring
    }

    pub fn algebra(&self) -> &BoolAlg {
        &self.algebra
    }

    pub fn lattice(&self) -> IdempotentLattice {
        self.lattice
    }

    pub fn to_element(&self, e: &Idempotent<Rational>) -> Result<BAElement> {
        if *e.ring() != self.ring {
            return Err(contract("idempotent of a different ring"));
        }
        self.algebra.element(e.mask())
    }

    pub fn to_idempotent(&self, b: &BAElement) -> Result<Idempotent<Rational>> {
        if *b.owner() != self.algebra {
            return Err(contract("element of a different algebra"));
        }
        Idempotent::from_mask(&self.ring, b.mask())
    }

    /// Checks `e∧e′ ↔ e·e′`, `e∨e′ ↔ join`, `e* ↔ 1 − e` on all pairs when
    /// `|S| ≤ exhaustive`, otherwise on `samples` seeded random pairs.
    pub fn dictionary_report(&self, exhaustive: usize, samples: usize, seed: u64) -> Result<CheckReport> {
        let mut report = CheckReport::new(format!("idempotent dictionary on {} points", self.ring.len()));
        let pairs = pair_masks(self.ring.len(), exhaustive, samples, seed);
        let lat = self.lattice;
        for (x, y) in pairs {
            let e = Idempotent::from_mask(&self.ring, x)?;
            let f = Idempotent::from_mask(&self.ring, y)?;
            let (be, bf) = (self.to_element(&e)?, self.to_element(&f)?);
            let meet = self.to_element(&lat.meet(&e, &f)?)?;
            report.record(meet == be.meet(&bf)?, || format!("meet of {be} and {bf} gives {meet}"));
            let join = self.to_element(&lat.join(&e, &f)?)?;
            report.record(join == be.join(&bf)?, || format!("join of {be} and {bf} gives {join}"));
            let comp = self.to_element(&lat.complement(&e)?)?;
            report.record(comp == be.complement(), || format!("complement of {be} gives {comp}"));
            let back = self.to_idempotent(&be)?;
            report.record(back == e, || format!("{be} does not round-trip"));
        }
        Ok(report)
    }
}

/// All pairs of subsets of `n` points, or seeded random pairs when
/// `n > exhaustive`.
pub(crate) fn pair_masks(n: usize, exhaustive: usize, samples: usize, seed: u64) -> Vec<(u64, u64)> {
    let full = super::full_mask(n);
    if n <= exhaustive {
        (0..=full).flat_map(|x| (0..=full).map(move |y| (x, y))).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples).map(|_| (rng.gen::<u64>() & full, rng.gen::<u64>() & full)).collect()
    }
}

/// Every subset of `n` points, or `samples` seeded random ones (with
/// repeats removed) when `n > exhaustive`.
pub(crate) fn subset_masks(n: usize, exhaustive: usize, samples: usize, seed: u64) -> Vec<u64> {
    if n <= exhaustive {
        return (0..=super::full_mask(n)).collect();
    }
    let mut masks: Vec<u64> = pair_masks(n, exhaustive, samples, seed).into_iter().map(|(x, _)| x).collect();
    masks.sort_unstable();
    masks.dedup();
    masks
}

/// `B̃(f)`: the restriction of `f` to idempotents, read through the
/// support bijection.
pub fn b_of_hom(f: &RingHom) -> Result<BAHom> {
    f.domain().require_backend(Backend::Rational)?;
    let source = BoolAlg::with_atoms(f.domain().points().to_vec())?;
    let target = BoolAlg::with_atoms(f.codomain().points().to_vec())?;
    BAHom::from_action(&source, &target, |mask| {
        let e = Idempotent::<Rational>::from_mask(f.domain(), mask)?;
        Ok(Idempotent::try_from_element(f.apply(e.element())?)?.mask())
    })
}

/// `j_A : B̃(A) → Clopen(Spec A)`, `e ↦ D(e)`, with inverse
/// `C ↦ 1_C`.
#[derive(Debug, Clone)]
pub struct JIso {
    ring: ProductRing,
    spectrum: FiniteBoolSpace,
    clopens: BoolAlg,
    // ring index of the prime at each spectrum point
    prime_index: Vec<usize>,
}

pub fn j_iso(ring: &ProductRing) -> Result<JIso> {
    let spectrum = spec(ring, MAX_ATOMS)?;
    let clopens = clopen(&spectrum)?;
    let prime_index = spectrum
        .points()
        .iter()
        .map(|p| ring.index_of(p).ok_or_else(|| contract(format!("no prime for point {p:?}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(JIso { ring: ring.clone(), spectrum, clopens, prime_index })
}

impl JIso {
    pub fn ring(&self) -> &ProductRing {
        &self.ring
    }

    pub fn spectrum(&self) -> &FiniteBoolSpace {
        &self.spectrum
    }

    pub fn clopens(&self) -> &BoolAlg {
        &self.clopens
    }

    pub fn forward(&self, e: &Idempotent<Rational>) -> Result<BAElement> {
        if *e.ring() != self.ring {
            return Err(contract("idempotent of a different ring"));
        }
        let support = d_infinity(e.element());
        let mask =
            (0..self.spectrum.len()).filter(|&p| support.contains(&self.prime_index[p])).fold(0u64, |m, p| m | 1 << p);
        self.clopens.element(mask)
    }

    pub fn backward(&self, c: &BAElement) -> Result<Idempotent<Rational>> {
        if *c.owner() != self.clopens {
            return Err(contract("not a clopen of this spectrum"));
        }
        Idempotent::indicator(&self.ring, c.atom_indices().into_iter().map(|p| self.prime_index[p]))
    }

    /// Bijectivity and preservation of `∧`, `∨`, `*`, `0`, `1`, with the
    /// operations on idempotents taken from `lattice`. Exhaustive when
    /// `|S| ≤ exhaustive`, otherwise on seeded random pairs.
    pub fn verify(
        &self,
        lattice: IdempotentLattice,
        exhaustive: usize,
        samples: usize,
        seed: u64,
    ) -> Result<CheckReport> {
        let ring = &self.ring;
        let n = ring.len();
        let mut report = CheckReport::new(format!("j on {n} points"));
        let one = self.forward(&Idempotent::one(ring)?)?;
        report.record(one.is_one(), || format!("j(1) = {one}"));
        let zero = self.forward(&Idempotent::zero(ring)?)?;
        report.record(zero.is_zero(), || format!("j(0) = {zero}"));

        let singles = subset_masks(n, exhaustive, samples, seed);
        let mut images = std::collections::HashSet::new();
        for &x in &singles {
            let e = Idempotent::from_mask(ring, x)?;
            let je = self.forward(&e)?;
            images.insert(je.mask());
            report.record(self.backward(&je)? == e, || format!("j⁻¹(j(e)) ≠ e for e = {:?}", e.support()));
            let c = self.clopens.element(x)?;
            report.record(self.forward(&self.backward(&c)?)? == c, || format!("j(j⁻¹(C)) ≠ C for C = {c}"));
            let comp = self.forward(&lattice.complement(&e)?)?;
            report.record(comp == je.complement(), || format!("j(e*) = {comp}, j(e)* = {}", je.complement()));
        }
        report.record(images.len() == singles.len(), || "j is not injective".into());

        for (x, y) in pair_masks(n, exhaustive, samples, seed.wrapping_add(1)) {
            let e = Idempotent::from_mask(ring, x)?;
            let f = Idempotent::from_mask(ring, y)?;
            let (je, jf) = (self.forward(&e)?, self.forward(&f)?);
            let meet = self.forward(&lattice.meet(&e, &f)?)?;
            report.record(meet == je.meet(&jf)?, || format!("j(e∧f) = {meet}, j(e)∧j(f) = {}", je.meet(&jf).unwrap()));
            let join = self.forward(&lattice.join(&e, &f)?)?;
            report.record(join == je.join(&jf)?, || format!("j(e∨f) = {join}, j(e)∨j(f) = {}", je.join(&jf).unwrap()));
        }
        Ok(report)
    }
}

/// The square `Clopen(Spec f) ∘ j_A = j_{A′} ∘ B̃(f)` for `f : A → A′`,
/// checked on every idempotent of `A` (up to `2^exhaustive` of them, else
/// sampled) and on lattice-built meets, joins and complements of sampled
/// pairs.
pub fn j_naturality(
    f: &RingHom,
    lattice: IdempotentLattice,
    exhaustive: usize,
    samples: usize,
    seed: u64,
) -> Result<CheckReport> {
    let (a, b) = (f.domain(), f.codomain());
    let mut report = CheckReport::new(format!("j naturality for a hom K^{} → K^{}", a.len(), b.len()));
    let (ja, jb) = (j_iso(a)?, j_iso(b)?);
    let (ba, bb) = (idempotent_algebra(a, MAX_ATOMS, lattice)?, idempotent_algebra(b, MAX_ATOMS, lattice)?);
    let bf = b_of_hom(f)?;
    let cs = clopen_of_map(&f.spec_map()?)?;

    let square = |e: &Idempotent<Rational>, via_clopens: BAElement, report: &mut CheckReport| -> Result<()> {
        let lhs = cs.apply(&via_clopens)?;
        let rhs = jb.forward(&bb.to_idempotent(&bf.apply(&ba.to_element(e)?)?)?)?;
        report.record(lhs == rhs, || format!("square fails at {:?}: {lhs} vs {rhs}", e.support()));
        Ok(())
    };

    for x in subset_masks(a.len(), exhaustive, samples, seed) {
        let e = Idempotent::from_mask(a, x)?;
        let je = ja.forward(&e)?;
        square(&e, je, &mut report)?;
    }
    for (x, y) in pair_masks(a.len(), 0, samples, seed.wrapping_add(1)) {
        let e = Idempotent::from_mask(a, x)?;
        let g = Idempotent::from_mask(a, y)?;
        let (je, jg) = (ja.forward(&e)?, ja.forward(&g)?);
        square(&lattice.meet(&e, &g)?, je.meet(&jg)?, &mut report)?;
        square(&lattice.join(&e, &g)?, je.join(&jg)?, &mut report)?;
        square(&lattice.complement(&e)?, je.complement(), &mut report)?;
    }
    Ok(report)
}
