//! Finite Boolean algebras, ultrafilters and finite Stone duality.
//!
//! A finite Boolean algebra is the powerset of its atoms, so an element is
//! stored as a bitmask over the atom list and a homomorphism `B → B′` is
//! stored by its dual map `atoms(B′) → atoms(B)`.

mod idempotent;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{check_bound, contract, Result};
use crate::space::{ContinuousMap, FiniteBoolSpace};

pub use idempotent::{
    b_of_hom, idempotent_algebra, j_iso, j_naturality, IdempotentAlgebra, IdempotentLattice, JIso, JoinRule,
};
pub(crate) use idempotent::{pair_masks, subset_masks};

/// Atoms are bits of a `u64`.
pub const MAX_ATOMS: usize = 64;

/// Algebras up to this many atoms are checked on every element pair.
pub const EXHAUSTIVE_ATOMS: usize = 4;

/// The powerset algebra on a finite ordered set of atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoolAlg {
    atoms: Arc<[String]>,
}

impl BoolAlg {
    /// Rejects the empty atom list: the one-element algebra only arises as
    /// `clopen(∅)`.
    pub fn new<I, S>(atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let alg = Self::with_atoms(atoms.into_iter().map(Into::into).collect())?;
        if alg.is_degenerate() {
            return Err(contract("a Boolean algebra needs at least one atom"));
        }
        Ok(alg)
    }

    fn with_atoms(atoms: Vec<String>) -> Result<Self> {
        check_bound("Boolean algebra atoms", atoms.len(), MAX_ATOMS)?;
        let mut seen = HashSet::new();
        if let Some(dup) = atoms.iter().find(|a| !seen.insert(a.as_str())) {
            return Err(contract(format!("duplicate atom {dup:?}")));
        }
        Ok(BoolAlg { atoms: atoms.into() })
    }

    /// Atoms `{prefix}1 … {prefix}n`.
    pub fn numbered(prefix: &str, n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("{prefix}{i}")))
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    /// Number of elements, `2^|atoms|`, if it fits.
    pub fn size(&self) -> Option<u128> {
        1u128.checked_shl(self.atoms.len() as u32)
    }

    /// The one-element algebra `0 = 1`.
    pub fn is_degenerate(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn index_of(&self, atom: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == atom)
    }

    pub(crate) fn require_index(&self, atom: &str) -> Result<usize> {
        self.index_of(atom).ok_or_else(|| contract(format!("unknown atom {atom:?}")))
    }

    pub(crate) fn full_mask(&self) -> u64 {
        full_mask(self.atoms.len())
    }

    pub fn zero(&self) -> BAElement {
        BAElement { owner: self.clone(), mask: 0 }
    }

    pub fn one(&self) -> BAElement {
        BAElement { owner: self.clone(), mask: self.full_mask() }
    }

    pub fn atom(&self, index: usize) -> Result<BAElement> {
        if index >= self.atoms.len() {
            return Err(contract(format!("atom index {index} out of range")));
        }
        Ok(BAElement { owner: self.clone(), mask: 1 << index })
    }

    pub fn element(&self, mask: u64) -> Result<BAElement> {
        if mask & !self.full_mask() != 0 {
            return Err(contract("subset has bits outside the atoms"));
        }
        Ok(BAElement { owner: self.clone(), mask })
    }

    pub fn element_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<BAElement> {
        let mut mask = 0u64;
        for name in names {
            mask |= 1 << self.require_index(name.as_ref())?;
        }
        self.element(mask)
    }

    /// Every element, in bitmask order.
    pub fn elements(&self, bound: usize) -> Result<Vec<BAElement>> {
        check_bound("Boolean algebra element enumeration", self.atoms.len(), bound.min(30))?;
        Ok((0..1u64 << self.atoms.len()).map(|mask| BAElement { owner: self.clone(), mask }).collect())
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of the atoms of its owner.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BAElement {
    owner: BoolAlg,
    mask: u64,
}

impl BAElement {
    pub fn owner(&self) -> &BoolAlg {
        &self.owner
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn atom_indices(&self) -> Vec<usize> {
        (0..self.owner.atom_count()).filter(|&i| self.mask >> i & 1 == 1).collect()
    }

    pub fn atom_names(&self) -> Vec<String> {
        self.atom_indices().into_iter().map(|i| self.owner.atoms[i].clone()).collect()
    }

    pub fn contains_atom(&self, index: usize) -> bool {
        index < 64 && self.mask >> index & 1 == 1
    }

    fn same_owner(&self, other: &BAElement) -> Result<()> {
        if Arc::ptr_eq(&self.owner.atoms, &other.owner.atoms) || self.owner == other.owner {
            Ok(())
        } else {
            Err(contract("elements of different Boolean algebras"))
        }
    }

    pub fn meet(&self, other: &BAElement) -> Result<BAElement> {
        self.same_owner(other)?;
        Ok(BAElement { owner: self.owner.clone(), mask: self.mask & other.mask })
    }

    pub fn join(&self, other: &BAElement) -> Result<BAElement> {
        self.same_owner(other)?;
        Ok(BAElement { owner: self.owner.clone(), mask: self.mask | other.mask })
    }

    pub fn complement(&self) -> BAElement {
        BAElement { owner: self.owner.clone(), mask: !self.mask & self.owner.full_mask() }
    }

    pub fn is_below(&self, other: &BAElement) -> Result<bool> {
        self.same_owner(other)?;
        Ok(self.mask & !other.mask == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.mask == 0
    }

    pub fn is_one(&self) -> bool {
        self.mask == self.owner.full_mask()
    }
}

impl fmt::Display for BAElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.atom_names().join(","))
    }
}

/// A Boolean homomorphism `B → B′`, stored by its dual atom map
/// `atoms(B′) → atoms(B)`; the action is `h(b) = {t : dual(t) ∈ b}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BAHom {
    domain: BoolAlg,
    codomain: BoolAlg,
    dual: Vec<usize>,
}

impl BAHom {
    pub fn new(domain: &BoolAlg, codomain: &BoolAlg, dual: Vec<usize>) -> Result<Self> {
        if dual.len() != codomain.atom_count() {
            return Err(contract(format!(
                "dual atom map has {} entries, codomain has {} atoms",
                dual.len(),
                codomain.atom_count()
            )));
        }
        if let Some(&bad) = dual.iter().find(|&&a| a >= domain.atom_count()) {
            return Err(contract(format!("dual atom map points at missing atom {bad}")));
        }
        Ok(BAHom { domain: domain.clone(), codomain: codomain.clone(), dual })
    }

    pub fn from_names(domain: &BoolAlg, codomain: &BoolAlg, table: &BTreeMap<String, String>) -> Result<Self> {
        let mut dual = vec![usize::MAX; codomain.atom_count()];
        for (t, a) in table {
            dual[codomain.require_index(t)?] = domain.require_index(a)?;
        }
        if let Some(missing) = dual.iter().position(|&a| a == usize::MAX) {
            return Err(contract(format!("dual atom map misses {:?}", codomain.atoms[missing])));
        }
        Self::new(domain, codomain, dual)
    }

    /// Recovers the dual map from an action on bitmasks: codomain atom `t`
    /// goes to the unique domain atom whose image contains it. The action
    /// must send the atoms to a partition of the codomain atoms and agree
    /// with the recovered hom on every element (checked exhaustively up to
    /// ten atoms, on atoms and their complements above).
    pub fn from_action(domain: &BoolAlg, codomain: &BoolAlg, action: impl Fn(u64) -> Result<u64>) -> Result<Self> {
        let mut dual = vec![usize::MAX; codomain.atom_count()];
        for a in 0..domain.atom_count() {
            let image = action(1 << a)?;
            for (t, slot) in dual.iter_mut().enumerate() {
                if image >> t & 1 == 1 {
                    if *slot != usize::MAX {
                        return Err(contract("images of distinct atoms overlap"));
                    }
                    *slot = a;
                }
            }
        }
        if dual.contains(&usize::MAX) {
            return Err(contract("images of the atoms do not cover the codomain"));
        }
        let hom = Self::new(domain, codomain, dual)?;
        let probes: Vec<u64> = if domain.atom_count() <= 10 {
            (0..1u64 << domain.atom_count()).collect()
        } else {
            let full = domain.full_mask();
            (0..domain.atom_count()).flat_map(|a| [1u64 << a, full & !(1 << a)]).chain([0, full]).collect()
        };
        for mask in probes {
            if action(mask)? != hom.apply_mask(mask) {
                return Err(contract(format!("action is not a Boolean homomorphism at subset {mask:#b}")));
            }
        }
        Ok(hom)
    }

    pub fn identity(alg: &BoolAlg) -> Self {
        BAHom { domain: alg.clone(), codomain: alg.clone(), dual: (0..alg.atom_count()).collect() }
    }

    pub fn domain(&self) -> &BoolAlg {
        &self.domain
    }

    pub fn codomain(&self) -> &BoolAlg {
        &self.codomain
    }

    pub fn dual(&self) -> &[usize] {
        &self.dual
    }

    pub fn to_names(&self) -> BTreeMap<String, String> {
        self.dual
            .iter()
            .enumerate()
            .map(|(t, &a)| (self.codomain.atoms[t].clone(), self.domain.atoms[a].clone()))
            .collect()
    }

    pub(crate) fn apply_mask(&self, mask: u64) -> u64 {
        self.dual.iter().enumerate().filter(|(_, &a)| mask >> a & 1 == 1).fold(0u64, |m, (t, _)| m | 1 << t)
    }

    pub fn apply(&self, b: &BAElement) -> Result<BAElement> {
        if b.owner != self.domain {
            return Err(contract("element is not in the domain of the homomorphism"));
        }
        self.codomain.element(self.apply_mask(b.mask))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &BAHom) -> Result<BAHom> {
        if first.codomain != self.domain {
            return Err(contract("homomorphisms are not composable"));
        }
        Ok(BAHom {
            domain: first.domain.clone(),
            codomain: self.codomain.clone(),
            dual: self.dual.iter().map(|&t| first.dual[t]).collect(),
        })
    }

    /// Checks preservation of `∧`, `∨`, `*`, `0`, `1` on every pair of
    /// elements when the domain has at most `exhaustive` atoms, otherwise
    /// on every pair of atoms and co-atoms.
    pub fn law_report(&self, exhaustive: usize) -> crate::report::CheckReport {
        let mut report = crate::report::CheckReport::new("Boolean homomorphism laws");
        let n = self.domain.atom_count();
        let full = self.domain.full_mask();
        let masks: Vec<u64> = if n <= exhaustive {
            (0..1u64 << n).collect()
        } else {
            (0..n).flat_map(|a| [1u64 << a, full & !(1 << a)]).collect()
        };
        let cfull = self.codomain.full_mask();
        report.record(self.apply_mask(0) == 0, || "h(0) ≠ 0".into());
        report.record(self.apply_mask(full) == cfull, || "h(1) ≠ 1".into());
        for &x in &masks {
            let hx = self.apply_mask(x);
            report.record(self.apply_mask(full & !x) == cfull & !hx, || format!("h(x*) ≠ h(x)* at {x:#b}"));
            for &y in &masks {
                let hy = self.apply_mask(y);
                report.record(self.apply_mask(x & y) == hx & hy, || format!("∧ not preserved at {x:#b}, {y:#b}"));
                report.record(self.apply_mask(x | y) == hx | hy, || format!("∨ not preserved at {x:#b}, {y:#b}"));
            }
        }
        report
    }
}

/// The principal ultrafilter `{b : atom ∈ b}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ultrafilter {
    algebra: BoolAlg,
    atom: usize,
}

impl Ultrafilter {
    pub fn algebra(&self) -> &BoolAlg {
        &self.algebra
    }

    pub fn atom(&self) -> usize {
        self.atom
    }

    pub fn contains(&self, b: &BAElement) -> Result<bool> {
        if b.owner != self.algebra {
            return Err(contract("element is not in the algebra of the ultrafilter"));
        }
        Ok(b.contains_atom(self.atom))
    }

    /// Name of the corresponding point of the Stone space.
    pub fn point_name(&self) -> String {
        format!("U_{}", self.algebra.atoms[self.atom])
    }
}

/// One ultrafilter per atom.
pub fn ultrafilters(alg: &BoolAlg, bound: usize) -> Result<Vec<Ultrafilter>> {
    check_bound("ultrafilter enumeration", alg.atom_count(), bound)?;
    Ok((0..alg.atom_count()).map(|atom| Ultrafilter { algebra: alg.clone(), atom }).collect())
}

/// The Stone space: the discrete space on the ultrafilters, point `U_a`
/// for atom `a`.
pub fn stone(alg: &BoolAlg) -> Result<FiniteBoolSpace> {
    if alg.is_degenerate() {
        return Err(contract("the Stone space of the one-element algebra is not accepted"));
    }
    let points = ultrafilters(alg, MAX_ATOMS)?.iter().map(Ultrafilter::point_name).collect::<Vec<_>>();
    FiniteBoolSpace::new(points)
}

/// The basic clopen `S(b) = {U : b ∈ U}` as point indices of `stone(alg)`.
pub fn stone_basis(b: &BAElement) -> Vec<usize> {
    b.atom_indices()
}

/// `U ↦ h⁻¹[U]`, a map `stone(codomain) → stone(domain)`.
pub fn stone_of_hom(h: &BAHom) -> Result<ContinuousMap> {
    ContinuousMap::new(stone(&h.codomain)?, stone(&h.domain)?, h.dual.clone())
}

/// The algebra of clopen subsets of a finite discrete space: all subsets,
/// with one atom per point. The empty space gives the flagged one-element
/// algebra.
pub fn clopen(space: &FiniteBoolSpace) -> Result<BoolAlg> {
    BoolAlg::with_atoms(space.points().to_vec())
}

/// `C ↦ φ⁻¹[C]`, a homomorphism `clopen(codomain) → clopen(domain)`.
pub fn clopen_of_map(map: &ContinuousMap) -> Result<BAHom> {
    BAHom::new(&clopen(map.codomain())?, &clopen(map.domain())?, map.table().to_vec())
}

/// The element of `clopen(space)` given by a set of point indices.
pub fn clopen_element(alg: &BoolAlg, points: &[usize]) -> Result<BAElement> {
    let mut mask = 0u64;
    for &p in points {
        if p >= alg.atom_count() {
            return Err(contract(format!("point index {p} out of range")));
        }
        mask |= 1 << p;
    }
    alg.element(mask)
}

/// `B → Clopen(Stone(B))`, `b ↦ S(b)`.
pub fn stone_unit(alg: &BoolAlg) -> Result<BAHom> {
    let clopens = clopen(&stone(alg)?)?;
    BAHom::from_action(alg, &clopens, Ok)
}

/// `X → Stone(Clopen(X))`, `x ↦ U_x`.
pub fn stone_counit(space: &FiniteBoolSpace) -> Result<ContinuousMap> {
    let alg = clopen(space)?;
    let target = stone(&alg)?;
    let table = (0..space.len())
        .map(|x| target.index_of(&format!("U_{}", space.name(x))).ok_or_else(|| contract("missing ultrafilter")))
        .collect::<Result<Vec<_>>>()?;
    ContinuousMap::new(space.clone(), target, table)
}
