//! Seeded verification suites over every module, and the aggregate run.
//!
//! Each suite draws its instances from a [`VerifyConfig`] and returns a
//! [`CheckReport`]; equal seeds give equal reports.

mod duality_suites;
mod ring_suites;
mod space_suites;

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boolean::{BAHom, BoolAlg, IdempotentLattice};
use crate::field::{Rational, Scalar};
use crate::report::CheckReport;
use crate::ring::{CompositionSettings, ProductRing, RingElement, RingHom};
use crate::space::{ContinuousMap, FiniteBoolSpace};
use crate::Result;

pub use duality_suites::{epsilon_suite, j_naturality_suite, j_suite, stone_suite, theta_suite};
pub use ring_suites::{
    equalizer_suite, localization_suite, quasi_inverse_suite, regularity_suite, smooth_suite, spectrum_suite,
};
pub use space_suites::{delta_functor_suite, delta_suite};

/// Sizes and sample counts for every suite. The default is the full
/// acceptance run.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    pub lattice: IdempotentLattice,
    /// Rings `K^m` in the random element corpus.
    pub ring_sizes: RangeInclusive<usize>,
    pub elements_per_size: usize,
    /// Sizes on which the idempotent generator of `(a)` is checked unique
    /// against every idempotent.
    pub uniqueness_sizes: RangeInclusive<usize>,
    /// Sizes on which every ideal is enumerated.
    pub ideal_sizes: RangeInclusive<usize>,
    pub localization_sizes: RangeInclusive<usize>,
    /// Sizes on which `j` is checked on every idempotent pair.
    pub j_sizes: RangeInclusive<usize>,
    pub naturality_homs: usize,
    pub naturality_points: usize,
    pub stone_atoms: RangeInclusive<usize>,
    pub random_algebras: usize,
    pub random_atoms: usize,
    pub stone_space_sizes: RangeInclusive<usize>,
    pub stone_homs: usize,
    pub delta_sizes: RangeInclusive<usize>,
    /// Sizes on which the limit-map functor is checked on every map.
    pub delta_map_sizes: RangeInclusive<usize>,
    pub delta_random_maps: usize,
    pub delta_random_points: usize,
    pub pullback_sizes: RangeInclusive<usize>,
    pub epsilon_sizes: RangeInclusive<usize>,
    pub epsilon_maps: usize,
    pub faithful_sizes: RangeInclusive<usize>,
    pub colimit_sizes: RangeInclusive<usize>,
    pub theta_atoms: RangeInclusive<usize>,
    pub theta_random: usize,
    pub smooth: CompositionSettings,
    pub smooth_points: usize,
    pub equalizer_pairs: usize,
    pub equalizer_samples: usize,
    /// Pairs drawn wherever a check is sampled rather than exhaustive.
    pub pair_samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            lattice: IdempotentLattice::default(),
            ring_sizes: 0..=12,
            elements_per_size: 1000,
            uniqueness_sizes: 0..=5,
            ideal_sizes: 0..=4,
            localization_sizes: 0..=6,
            j_sizes: 0..=5,
            naturality_homs: 200,
            naturality_points: 6,
            stone_atoms: 1..=4,
            random_algebras: 100,
            random_atoms: 8,
            stone_space_sizes: 1..=8,
            stone_homs: 100,
            delta_sizes: 0..=6,
            delta_map_sizes: 0..=3,
            delta_random_maps: 100,
            delta_random_points: 5,
            pullback_sizes: 0..=4,
            epsilon_sizes: 0..=64,
            epsilon_maps: 50,
            faithful_sizes: 0..=4,
            colimit_sizes: 0..=4,
            theta_atoms: 1..=4,
            theta_random: 100,
            smooth: CompositionSettings::default(),
            smooth_points: 4,
            equalizer_pairs: 100,
            equalizer_samples: 100,
            pair_samples: 64,
        }
    }
}

impl VerifyConfig {
    pub fn with_seed(seed: u64) -> Self {
        let base = VerifyConfig::default();
        VerifyConfig { seed, smooth: CompositionSettings { seed, ..base.smooth }, ..base }
    }

    /// A configuration with no instances at all.
    pub fn empty(seed: u64) -> Self {
        #[allow(clippy::reversed_empty_ranges)]
        let none = 1..=0;
        VerifyConfig {
            seed,
            lattice: IdempotentLattice::default(),
            ring_sizes: none.clone(),
            elements_per_size: 0,
            uniqueness_sizes: none.clone(),
            ideal_sizes: none.clone(),
            localization_sizes: none.clone(),
            j_sizes: none.clone(),
            naturality_homs: 0,
            naturality_points: 0,
            stone_atoms: none.clone(),
            random_algebras: 0,
            random_atoms: 0,
            stone_space_sizes: none.clone(),
            stone_homs: 0,
            delta_sizes: none.clone(),
            delta_map_sizes: none.clone(),
            delta_random_maps: 0,
            delta_random_points: 0,
            pullback_sizes: none.clone(),
            epsilon_sizes: none.clone(),
            epsilon_maps: 0,
            faithful_sizes: none.clone(),
            colimit_sizes: none.clone(),
            theta_atoms: none,
            theta_random: 0,
            smooth: CompositionSettings { samples: 0, seed, ..CompositionSettings::default() },
            smooth_points: 0,
            equalizer_pairs: 0,
            equalizer_samples: 0,
            pair_samples: 0,
        }
    }

    /// Independent generator for one suite, so suites can run in any order.
    pub(crate) fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

/// The seeded random elements of `K^m` for every configured `m`.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub rings: Vec<(ProductRing, Vec<RingElement<Rational>>)>,
}

impl Corpus {
    pub fn generate(config: &VerifyConfig) -> Result<Corpus> {
        let mut rings = Vec::new();
        for m in config.ring_sizes.clone() {
            let mut rng = config.rng(1000 + m as u64);
            let ring = ProductRing::rational(m);
            let elements =
                (0..config.elements_per_size).map(|_| random_element(&mut rng, &ring)).collect::<Result<Vec<_>>>()?;
            rings.push((ring, elements));
        }
        Ok(Corpus { rings })
    }

    pub fn len(&self) -> usize {
        self.rings.iter().map(|(_, e)| e.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A random rational, zero a quarter of the time.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    if rng.gen_bool(0.25) {
        return Rational::zero();
    }
    let mut num = rng.gen_range(-30i64..=29);
    if num >= 0 {
        num += 1;
    }
    Rational::new(num, rng.gen_range(1i64..=12)).expect("positive denominator")
}

pub fn random_element<R: Rng + ?Sized>(rng: &mut R, ring: &ProductRing) -> Result<RingElement<Rational>> {
    RingElement::from_fn(ring, |_| random_rational(rng))
}

/// `count` seeded random elements of an exact ring.
pub fn random_elements(ring: &ProductRing, count: usize, seed: u64) -> Result<Vec<RingElement<Rational>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_element(&mut rng, ring)).collect()
}

/// A uniformly random map, or `None` when there is none.
pub fn random_map<R: Rng + ?Sized>(
    rng: &mut R,
    domain: &FiniteBoolSpace,
    codomain: &FiniteBoolSpace,
) -> Option<ContinuousMap> {
    if codomain.is_empty() && !domain.is_empty() {
        return None;
    }
    let table = (0..domain.len()).map(|_| rng.gen_range(0..codomain.len())).collect();
    ContinuousMap::new(domain.clone(), codomain.clone(), table).ok()
}

/// A random hom `K^m → K^k` with `1 ≤ m, k ≤ max_points`.
pub fn random_hom<R: Rng + ?Sized>(rng: &mut R, max_points: usize) -> Result<RingHom> {
    let m = rng.gen_range(1..=max_points.max(1));
    let k = rng.gen_range(1..=max_points.max(1));
    let domain = ProductRing::new((1..=m).map(|i| format!("s{i}")), crate::field::Backend::Rational)?;
    let codomain = ProductRing::new((1..=k).map(|i| format!("t{i}")), crate::field::Backend::Rational)?;
    RingHom::new(&domain, &codomain, (0..k).map(|_| rng.gen_range(0..m)).collect())
}

/// An algebra with `1..=max_atoms` atoms under shuffled names.
pub fn random_algebra<R: Rng + ?Sized>(rng: &mut R, max_atoms: usize, prefix: &str) -> Result<BoolAlg> {
    let n = rng.gen_range(1..=max_atoms.max(1));
    let mut names: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
    names.shuffle(rng);
    BoolAlg::new(names)
}

pub fn random_ba_hom<R: Rng + ?Sized>(rng: &mut R, domain: &BoolAlg, codomain: &BoolAlg) -> Result<BAHom> {
    let dual = (0..codomain.atom_count()).map(|_| rng.gen_range(0..domain.atom_count())).collect();
    BAHom::new(domain, codomain, dual)
}

/// Bell numbers by the Bell triangle.
pub fn bell_numbers(up_to: usize) -> Vec<u64> {
    let mut bells = vec![1u64];
    let mut row = vec![1u64];
    for _ in 0..up_to {
        let mut next = vec![*row.last().expect("rows are nonempty")];
        for &x in &row {
            next.push(next.last().expect("just pushed") + x);
        }
        bells.push(next[0]);
        row = next;
    }
    bells
}

/// Outcome of [`full_pipeline_verify`].
#[derive(Debug, Clone, Serialize)]
pub struct PipelineReport {
    pub seed: u64,
    pub passed: bool,
    pub checked: usize,
    pub failed: usize,
    pub suites: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Every suite, in a fixed order.
pub fn run_suites(config: &VerifyConfig) -> Vec<CheckReport> {
    let corpus = match Corpus::generate(config) {
        Ok(c) => c,
        Err(err) => {
            let mut report = CheckReport::new("corpus");
            report.fail(err.to_string());
            return vec![report];
        }
    };
    type Suite = fn(&VerifyConfig, &Corpus) -> CheckReport;
    let suites: [Suite; 13] = [
        quasi_inverse_suite,
        regularity_suite,
        spectrum_suite,
        localization_suite,
        j_suite,
        j_naturality_suite,
        stone_suite,
        delta_suite,
        delta_functor_suite,
        epsilon_suite,
        theta_suite,
        smooth_suite,
        equalizer_suite,
    ];
    suites.iter().map(|suite| suite(config, &corpus)).collect()
}

/// Runs every suite and collects the results; a run that checks nothing
/// passes with a warning.
pub fn full_pipeline_verify(config: &VerifyConfig) -> PipelineReport {
    let suites = run_suites(config);
    let checked = suites.iter().map(|s| s.checked).sum();
    let failed = suites.iter().map(|s| s.failed).sum();
    let mut warnings = Vec::new();
    if checked == 0 {
        warnings.push("empty corpus: nothing was checked, the pass is vacuous".to_owned());
    }
    PipelineReport { seed: config.seed, passed: failed == 0, checked, failed, suites, warnings }
}

/// Turns a suite body that may fail early into a report.
pub(crate) fn run_suite(name: &str, body: impl FnOnce(&mut CheckReport) -> Result<()>) -> CheckReport {
    let mut report = CheckReport::new(name);
    if let Err(err) = body(&mut report) {
        report.fail(format!("aborted: {err}"));
    }
    report
}
