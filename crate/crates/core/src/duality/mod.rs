//! Representing finite Boolean spaces and Boolean algebras by rings.
//!
//! `k̂(X) = K^X` and `Ǩ(B) = k̂(Stone(B))`. The natural isomorphisms
//! `ε : X ≅ Spec(k̂ X)` and `θ : B ≅ B̃(Ǩ B)` are computed explicitly and
//! checked component by component and square by square.

mod colimit;

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::boolean::{
    b_of_hom, idempotent_algebra, j_iso, pair_masks, stone, stone_of_hom, subset_masks, BAElement, BAHom, BoolAlg,
    IdempotentAlgebra, IdempotentLattice, MAX_ATOMS,
};
use crate::error::{check_bound, contract, Result};
use crate::field::{Backend, Rational};
use crate::report::CheckReport;
use crate::ring::{prime_points, spec, Idempotent, ProductRing, RingElement, RingHom};
use crate::space::{all_maps, ContinuousMap, FiniteBoolSpace};

pub use colimit::{colimit_certificate, ColimitCertificate};

/// `k̂(X) = K^X`, the colimit of `K^{X/R}` over the partitions of `X`,
/// attained at the diagonal.
pub fn khat(space: &FiniteBoolSpace, backend: Backend) -> ProductRing {
    ProductRing::over_space(space, backend)
}

/// `k̂(φ) : K^{X′} → K^X`, `g ↦ g ∘ φ`.
pub fn khat_of_map(map: &ContinuousMap, backend: Backend) -> Result<RingHom> {
    RingHom::new(&khat(map.codomain(), backend), &khat(map.domain(), backend), map.table().to_vec())
}

/// `Ǩ(B) = k̂(Stone(B))`.
pub fn k_check(alg: &BoolAlg, backend: Backend) -> Result<ProductRing> {
    Ok(khat(&stone(alg)?, backend))
}

/// `Ǩ(h) = k̂(Stone(h)) : Ǩ(B) → Ǩ(B′)` for `h : B → B′`.
pub fn k_check_of_hom(h: &BAHom, backend: Backend) -> Result<RingHom> {
    khat_of_map(&stone_of_hom(h)?, backend)
}

/// One component of a natural transformation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentTable {
    pub object: String,
    /// Action on points or atoms, by name.
    pub table: BTreeMap<String, String>,
    pub bijective: bool,
    pub preserves_structure: bool,
}

/// One naturality square, checked elementwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquareResult {
    pub morphism: String,
    pub checked: usize,
    pub commutes: bool,
}

/// Components and squares of a candidate natural isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NaturalIsoReport {
    pub name: String,
    pub components: Vec<ComponentTable>,
    pub squares: Vec<SquareResult>,
    pub failures: Vec<String>,
}

impl NaturalIsoReport {
    pub fn new(name: impl Into<String>) -> Self {
        NaturalIsoReport { name: name.into(), components: Vec::new(), squares: Vec::new(), failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self.components.iter().all(|c| c.bijective && c.preserves_structure)
            && self.squares.iter().all(|s| s.commutes)
    }

    pub fn merge(&mut self, other: NaturalIsoReport) {
        self.components.extend(other.components);
        self.squares.extend(other.squares);
        self.failures.extend(other.failures);
    }

    pub fn to_check_report(&self) -> CheckReport {
        let mut report = CheckReport::new(self.name.clone());
        for c in &self.components {
            report.record(c.bijective, || format!("component at {} is not bijective", c.object));
            report.record(c.preserves_structure, || format!("component at {} does not preserve structure", c.object));
        }
        for s in &self.squares {
            report.record(s.commutes, || format!("square for {} does not commute", s.morphism));
        }
        for f in &self.failures {
            report.record(false, || f.clone());
        }
        report
    }
}

/// `ε_X : X → Spec(K^X)`, `x ↦ p_x`, where `p_x` is the prime generated
/// by `1 − δ_x`.
#[derive(Debug, Clone)]
pub struct Epsilon {
    map: ContinuousMap,
}

pub fn epsilon(space: &FiniteBoolSpace, bound: usize) -> Result<Epsilon> {
    check_bound("epsilon", space.len(), bound)?;
    let ring = khat(space, Backend::Rational);
    let spectrum = spec(&ring, bound)?;
    // generator mask of each prime, keyed back to its spectrum point
    let mut by_generator = HashMap::new();
    for p in prime_points(&ring) {
        let mask = p.ideal::<Rational>(&ring)?.generator().mask();
        let point = spectrum.require_index(ring.name(p.index))?;
        by_generator.insert(mask, point);
    }
    let table = (0..space.len())
        .map(|x| {
            let generator = Idempotent::<Rational>::indicator(&ring, (0..space.len()).filter(|&y| y != x))?;
            by_generator
                .get(&generator.mask())
                .copied()
                .ok_or_else(|| contract(format!("no prime generated by 1 − δ_{}", space.name(x))))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Epsilon { map: ContinuousMap::new(space.clone(), spectrum, table)? })
}

impl Epsilon {
    pub fn map(&self) -> &ContinuousMap {
        &self.map
    }

    pub fn component(&self) -> ComponentTable {
        ComponentTable {
            object: format!("{}-point space", self.map.domain().len()),
            table: self.map.to_names(),
            bijective: self.map.is_bijective(),
            // both sides are discrete, so any bijection is a homeomorphism
            preserves_structure: true,
        }
    }
}

/// The square `Spec(k̂ φ) ∘ ε_X = ε_{X′} ∘ φ`.
pub fn epsilon_square(map: &ContinuousMap, bound: usize) -> Result<SquareResult> {
    let ex = epsilon(map.domain(), bound)?;
    let ey = epsilon(map.codomain(), bound)?;
    let spec_phi = khat_of_map(map, Backend::Rational)?.spec_map()?;
    let lhs = spec_phi.compose(ex.map())?;
    let rhs = ey.map().compose(map)?;
    let checked = map.domain().len();
    Ok(SquareResult {
        morphism: describe_map(map),
        checked,
        commutes: lhs.table() == rhs.table() && lhs.codomain().points() == rhs.codomain().points(),
    })
}

/// Components of `ε` on the given spaces and squares on the given maps.
pub fn epsilon_report(spaces: &[FiniteBoolSpace], maps: &[ContinuousMap], bound: usize) -> Result<NaturalIsoReport> {
    let mut report = NaturalIsoReport::new("epsilon");
    for x in spaces {
        match epsilon(x, bound) {
            Ok(e) => report.components.push(e.component()),
            Err(err) => report.failures.push(format!("ε at {}-point space: {err}", x.len())),
        }
    }
    for m in maps {
        match epsilon_square(m, bound) {
            Ok(s) => report.squares.push(s),
            Err(err) => report.failures.push(format!("ε square for {}: {err}", describe_map(m))),
        }
    }
    Ok(report)
}

/// `θ_B : B → B̃(Ǩ(B))`, atom `a ↦` indicator of `U_a`.
#[derive(Debug, Clone)]
pub struct Theta {
    algebra: BoolAlg,
    target: IdempotentAlgebra,
    // ring index of U_a for each atom a
    index: Vec<usize>,
}

pub fn theta(alg: &BoolAlg, bound: usize, lattice: IdempotentLattice) -> Result<Theta> {
    check_bound("theta", alg.atom_count(), bound)?;
    let ring = k_check(alg, Backend::Rational)?;
    let target = idempotent_algebra(&ring, bound, lattice)?;
    let index = alg.atoms().iter().map(|a| ring.require_index(&format!("U_{a}"))).collect::<Result<Vec<_>>>()?;
    Ok(Theta { algebra: alg.clone(), target, index })
}

impl Theta {
    pub fn algebra(&self) -> &BoolAlg {
        &self.algebra
    }

    pub fn target(&self) -> &IdempotentAlgebra {
        &self.target
    }

    pub fn apply(&self, b: &BAElement) -> Result<Idempotent<Rational>> {
        if *b.owner() != self.algebra {
            return Err(contract("element is not in the domain of θ"));
        }
        Idempotent::indicator(self.target.ring(), b.atom_indices().into_iter().map(|a| self.index[a]))
    }

    pub fn inverse(&self, e: &Idempotent<Rational>) -> Result<BAElement> {
        let support = e.support();
        let mask =
            (0..self.algebra.atom_count()).filter(|&a| support.contains(&self.index[a])).fold(0u64, |m, a| m | 1 << a);
        if e.ring() != self.target.ring() || mask.count_ones() as usize != support.len() {
            return Err(contract("idempotent is not in the image of θ"));
        }
        self.algebra.element(mask)
    }

    /// Bijectivity and preservation of `0`, `1`, `∧`, `∨`, `*`, where the
    /// operations on idempotents come from the lattice. All pairs up to
    /// `exhaustive` atoms, seeded random pairs above.
    pub fn component(&self, exhaustive: usize, samples: usize, seed: u64) -> Result<(ComponentTable, CheckReport)> {
        let lat = self.target.lattice();
        let alg = &self.algebra;
        let n = alg.atom_count();
        let mut report = CheckReport::new(format!("θ on {n} atoms"));
        report.record(self.apply(&alg.zero())? == Idempotent::zero(self.target.ring())?, || "θ(0) ≠ 0".into());
        report.record(self.apply(&alg.one())? == Idempotent::one(self.target.ring())?, || "θ(1) ≠ 1".into());

        let pairs = pair_masks(n, exhaustive, samples, seed);
        let singles = subset_masks(n, exhaustive, samples, seed);
        let mut images = std::collections::HashSet::new();
        for &x in &singles {
            let b = alg.element(x)?;
            let e = self.apply(&b)?;
            images.insert(e.mask());
            report.record(self.inverse(&e)? == b, || format!("θ⁻¹(θ({b})) ≠ {b}"));
            let comp = self.apply(&b.complement())?;
            report.record(comp == lat.complement(&e)?, || format!("θ({b}*) ≠ θ({b})*"));
        }
        let injective = images.len() == singles.len();
        report.record(injective, || "θ is not injective".into());
        let ring = self.target.ring();
        let mut index = self.index.clone();
        index.sort_unstable();
        let permutation = index == (0..ring.len()).collect::<Vec<_>>();
        report.record(permutation, || "atoms and ultrafilter points are not in bijection".into());
        // every idempotent of Ǩ(B) is hit
        let mut surjective = permutation;
        for m in subset_masks(ring.len(), exhaustive, samples, seed ^ 0x5eed) {
            let e = Idempotent::<Rational>::from_mask(ring, m)?;
            let hit = self.inverse(&e).and_then(|b| self.apply(&b)).is_ok_and(|img| img == e);
            surjective &= report.record(hit, || format!("idempotent {:?} is not hit", e.support()));
        }
        let mut preserves = true;
        for (x, y) in pairs {
            let (bx, by) = (alg.element(x)?, alg.element(y)?);
            let (ex, ey) = (self.apply(&bx)?, self.apply(&by)?);
            preserves &= report.record(self.apply(&bx.meet(&by)?)? == lat.meet(&ex, &ey)?, || {
                format!("θ({bx} ∧ {by}) ≠ θ({bx})·θ({by})")
            });
            preserves &= report.record(self.apply(&bx.join(&by)?)? == lat.join(&ex, &ey)?, || {
                format!("θ({bx} ∨ {by}) ≠ θ({bx}) ∨ θ({by})")
            });
        }
        let table = alg
            .atoms()
            .iter()
            .enumerate()
            .map(|(a, name)| (name.clone(), ring.name(self.index[a]).to_owned()))
            .collect();
        let component = ComponentTable {
            object: format!("{n}-atom algebra"),
            table,
            bijective: injective && surjective,
            preserves_structure: preserves && report.passed(),
        };
        Ok((component, report))
    }

    /// `B̃(Ǩ(B))` computed two ways agree: the idempotent algebra directly,
    /// and `Clopen(Spec(Ǩ B))` pulled back through `j`.
    pub fn coherence(&self, exhaustive: usize, samples: usize, seed: u64) -> Result<CheckReport> {
        let mut report = CheckReport::new(format!("B̃Ǩ coherence on {} atoms", self.algebra.atom_count()));
        let j = j_iso(self.target.ring())?;
        let n = self.algebra.atom_count();
        for x in subset_masks(n, exhaustive, samples, seed) {
            let e = self.apply(&self.algebra.element(x)?)?;
            let direct = self.target.to_element(&e)?.atom_names();
            let via_j = j.forward(&e)?.atom_names();
            report.record(direct == via_j, || format!("{direct:?} vs {via_j:?}"));
        }
        Ok(report)
    }
}

/// The square `B̃(Ǩ(h)) ∘ θ_B = θ_{B′} ∘ h`, on every element (or sampled
/// ones) and on lattice-built meets, joins and complements of sampled
/// pairs.
pub fn theta_square(
    h: &BAHom,
    lattice: IdempotentLattice,
    exhaustive: usize,
    samples: usize,
    seed: u64,
) -> Result<SquareResult> {
    let tb = theta(h.domain(), MAX_ATOMS, lattice)?;
    let tc = theta(h.codomain(), MAX_ATOMS, lattice)?;
    let bk = b_of_hom(&k_check_of_hom(h, Backend::Rational)?)?;
    let mut checked = 0;
    let mut commutes = true;
    let mut square = |e: &Idempotent<Rational>, b: &BAElement| -> Result<()> {
        let lhs = tc.target().to_idempotent(&bk.apply(&tb.target().to_element(e)?)?)?;
        let rhs = tc.apply(&h.apply(b)?)?;
        checked += 1;
        commutes &= lhs == rhs;
        Ok(())
    };
    let n = h.domain().atom_count();
    let pairs = pair_masks(n, exhaustive, samples, seed);
    for &(x, y) in &pairs {
        let (bx, by) = (h.domain().element(x)?, h.domain().element(y)?);
        let (ex, ey) = (tb.apply(&bx)?, tb.apply(&by)?);
        square(&ex, &bx)?;
        square(&lattice.meet(&ex, &ey)?, &bx.meet(&by)?)?;
        square(&lattice.join(&ex, &ey)?, &bx.join(&by)?)?;
        square(&lattice.complement(&ex)?, &bx.complement())?;
    }
    Ok(SquareResult {
        morphism: format!("{}-atom → {}-atom hom {:?}", n, h.codomain().atom_count(), h.dual()),
        checked,
        commutes,
    })
}

/// Components of `θ` on the given algebras, squares on the given homs, and
/// the two-way coherence check.
pub fn theta_report(
    algebras: &[BoolAlg],
    homs: &[BAHom],
    lattice: IdempotentLattice,
    exhaustive: usize,
    samples: usize,
    seed: u64,
) -> Result<NaturalIsoReport> {
    let mut report = NaturalIsoReport::new("theta");
    for (i, alg) in algebras.iter().enumerate() {
        let seed = seed.wrapping_add(i as u64);
        let result = theta(alg, MAX_ATOMS, lattice).and_then(|t| {
            let (component, check) = t.component(exhaustive, samples, seed)?;
            let coherence = t.coherence(exhaustive, samples, seed)?;
            Ok((component, check, coherence))
        });
        match result {
            Ok((component, check, coherence)) => {
                report.failures.extend(check.failures);
                report.failures.extend(coherence.failures);
                report.components.push(component);
            }
            Err(err) => report.failures.push(format!("θ at {}-atom algebra: {err}", alg.atom_count())),
        }
    }
    for (i, h) in homs.iter().enumerate() {
        match theta_square(h, lattice, exhaustive, samples, seed.wrapping_add(i as u64)) {
            Ok(s) => report.squares.push(s),
            Err(err) => report.failures.push(format!("θ square: {err}")),
        }
    }
    Ok(report)
}

/// `φ ≠ ψ ⇒ k̂(φ) ≠ k̂(ψ)` over all pairs of maps between spaces of at most
/// `max_points` points, each time exhibiting a separating element.
pub fn faithfulness_report(max_points: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("k̂ faithful");
    for n in 0..=max_points {
        for m in 0..=max_points {
            let x = FiniteBoolSpace::numbered("x", n);
            let y = FiniteBoolSpace::numbered("y", m);
            let maps = all_maps(&x, &y);
            let homs = maps.iter().map(|f| khat_of_map(f, Backend::Rational)).collect::<Result<Vec<_>>>()?;
            let ky = khat(&y, Backend::Rational);
            let units = (0..m).map(|t| RingElement::<Rational>::unit_vector(&ky, t)).collect::<Result<Vec<_>>>()?;
            for i in 0..maps.len() {
                for j in i + 1..maps.len() {
                    let separated = units.iter().try_fold(false, |found, u| {
                        Ok::<_, crate::Error>(found || homs[i].apply(u)? != homs[j].apply(u)?)
                    })?;
                    report.record(separated, || {
                        format!("{} and {} give equal homs", describe_map(&maps[i]), describe_map(&maps[j]))
                    });
                }
            }
        }
    }
    Ok(report)
}

/// `φ = ε_{X′}⁻¹ ∘ Spec(k̂ φ) ∘ ε_X` for every map between spaces of at most
/// `max_points` points.
pub fn conjugation_report(max_points: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("maps recovered from k̂ by conjugation");
    for n in 0..=max_points {
        for m in 0..=max_points {
            let x = FiniteBoolSpace::numbered("x", n);
            let y = FiniteBoolSpace::numbered("y", m);
            let ex = epsilon(&x, MAX_ATOMS)?;
            let ey_inv = epsilon(&y, MAX_ATOMS)?.map().inverse()?;
            for phi in all_maps(&x, &y) {
                let spec_phi = khat_of_map(&phi, Backend::Rational)?.spec_map()?;
                let recovered = ey_inv.compose(&spec_phi.compose(ex.map())?)?;
                report.record(recovered == phi, || format!("{} is not recovered", describe_map(&phi)));
            }
        }
    }
    Ok(report)
}

pub(crate) fn describe_map(map: &ContinuousMap) -> String {
    format!("{}→{} map {:?}", map.domain().len(), map.codomain().len(), map.table())
}
