//! Suites for the Boolean-algebra and duality modules.

use super::{random_algebra, random_ba_hom, random_hom, random_map, run_suite, Corpus, VerifyConfig};
use crate::boolean::{
    clopen, clopen_of_map, idempotent_algebra, j_iso, j_naturality, stone, stone_basis, stone_counit, stone_of_hom,
    stone_unit, BAHom, BoolAlg, EXHAUSTIVE_ATOMS,
};
use crate::duality::{colimit_certificate, conjugation_report, epsilon_report, faithfulness_report, theta_report};
use crate::report::CheckReport;
use crate::ring::{ProductRing, DEFAULT_MAX_POINTS};
use crate::space::{ContinuousMap, FiniteBoolSpace};
use crate::Result;

/// `j` is a Boolean isomorphism on every idempotent pair of small rings,
/// and the idempotent dictionary holds; larger corpus rings are sampled.
pub fn j_suite(config: &VerifyConfig, corpus: &Corpus) -> CheckReport {
    run_suite("j isomorphism", |report| {
        let exhaustive = *config.j_sizes.end();
        let mut sizes: Vec<usize> = config.j_sizes.clone().collect();
        sizes.extend(corpus.rings.iter().map(|(r, _)| r.len()).filter(|m| !config.j_sizes.contains(m)));
        for m in sizes {
            let ring = ProductRing::rational(m);
            let seed = config.seed.wrapping_add(m as u64);
            report.merge(j_iso(&ring)?.verify(config.lattice, exhaustive, config.pair_samples, seed)?);
            let alg = idempotent_algebra(&ring, DEFAULT_MAX_POINTS, config.lattice)?;
            report.merge(alg.dictionary_report(exhaustive, config.pair_samples, seed)?);
        }
        Ok(())
    })
}

/// The naturality square of `j` for random homs between small products.
pub fn j_naturality_suite(config: &VerifyConfig, _corpus: &Corpus) -> CheckReport {
    run_suite("j naturality", |report| {
        let mut rng = config.rng(6);
        for i in 0..config.naturality_homs {
            let f = random_hom(&mut rng, config.naturality_points)?;
            let seed = config.seed.wrapping_add(i as u64);
            report.merge(j_naturality(&f, config.lattice, config.naturality_points, config.pair_samples, seed)?);
        }
        Ok(())
    })
}

fn unit_is_iso(report: &mut CheckReport, alg: &BoolAlg) -> Result<()> {
    let unit = stone_unit(alg)?;
    let laws = unit.law_report(EXHAUSTIVE_ATOMS);
    report.merge(laws);
    let mut dual = unit.dual().to_vec();
    dual.sort_unstable();
    report.record(dual == (0..alg.atom_count()).collect::<Vec<_>>(), || {
        format!("Clopen(Stone(B)) ≇ B on {} atoms", alg.atom_count())
    });
    let space = stone(alg)?;
    for b in alg.elements(EXHAUSTIVE_ATOMS.max(8))? {
        let image = unit.apply(&b)?;
        let expected: Vec<String> = stone_basis(&b).into_iter().map(|u| space.name(u).to_owned()).collect();
        report.record(image.atom_names() == expected, || format!("unit sends {b} to {image}"));
    }
    Ok(())
}

/// Finite Stone duality: both round trips on objects, contravariance on
/// morphisms, and naturality of the unit and counit.
pub fn stone_suite(config: &VerifyConfig, _corpus: &Corpus) -> CheckReport {
    run_suite("Stone duality", |report| {
        for n in config.stone_atoms.clone() {
            unit_is_iso(report, &BoolAlg::numbered("a", n)?)?;
        }
        let mut rng = config.rng(7);
        for _ in 0..config.random_algebras {
            unit_is_iso(report, &random_algebra(&mut rng, config.random_atoms, "b")?)?;
        }
        for n in config.stone_space_sizes.clone() {
            let x = FiniteBoolSpace::numbered("x", n);
            let counit = stone_counit(&x)?;
            report.record(counit.is_bijective(), || format!("Stone(Clopen(X)) ≉ X on {n} points"));
        }
        if config.stone_space_sizes.contains(&0) {
            let degenerate = clopen(&FiniteBoolSpace::numbered("x", 0))?;
            report.record(degenerate.is_degenerate() && stone(&degenerate).is_err(), || {
                "the one-element algebra is not flagged".to_owned()
            });
        }
        for _ in 0..config.stone_homs {
            let b = random_algebra(&mut rng, config.random_atoms, "b")?;
            let c = random_algebra(&mut rng, config.random_atoms, "c")?;
            let d = random_algebra(&mut rng, config.random_atoms, "d")?;
            let h = random_ba_hom(&mut rng, &b, &c)?;
            let k = random_ba_hom(&mut rng, &c, &d)?;
            report.merge(h.law_report(EXHAUSTIVE_ATOMS));
            let lhs = stone_of_hom(&k.compose(&h)?)?;
            let rhs = stone_of_hom(&h)?.compose(&stone_of_hom(&k)?)?;
            report.record(lhs == rhs, || format!("Stone(k∘h) ≠ Stone(h)∘Stone(k) for {:?}, {:?}", h.dual(), k.dual()));
            report.record(stone_of_hom(&BAHom::identity(&b))? == ContinuousMap::identity(&stone(&b)?), || {
                "Stone(id) ≠ id".to_owned()
            });
            // unit: Clopen(Stone(h)) ∘ η_B = η_C ∘ h
            let lhs = clopen_of_map(&stone_of_hom(&h)?)?.compose(&stone_unit(&b)?)?;
            let rhs = stone_unit(&c)?.compose(&h)?;
            report.record(lhs == rhs, || format!("unit is not natural at {:?}", h.dual()));
            // counit: Stone(Clopen(φ)) ∘ ε_X = ε_Y ∘ φ
            let x = stone(&b)?;
            let y = stone(&c)?;
            if let Some(phi) = random_map(&mut rng, &x, &y) {
                let lhs = stone_of_hom(&clopen_of_map(&phi)?)?.compose(&stone_counit(&x)?)?;
                let rhs = stone_counit(&y)?.compose(&phi)?;
                report.record(lhs == rhs, || format!("counit is not natural at {:?}", phi.table()));
            }
        }
        Ok(())
    })
}

/// `ε` bijective on every configured size and natural on random maps;
/// `k̂` faithful; maps recovered by conjugation; the colimit closed form
/// certified.
pub fn epsilon_suite(config: &VerifyConfig, _corpus: &Corpus) -> CheckReport {
    run_suite("epsilon", |report| {
        let spaces: Vec<FiniteBoolSpace> =
            config.epsilon_sizes.clone().map(|n| FiniteBoolSpace::numbered("x", n)).collect();
        let mut rng = config.rng(10);
        let mut maps = Vec::new();
        if !spaces.is_empty() {
            while maps.len() < config.epsilon_maps {
                let x = &spaces[rand::Rng::gen_range(&mut rng, 0..spaces.len())];
                let y = &spaces[rand::Rng::gen_range(&mut rng, 0..spaces.len())];
                if let Some(phi) = random_map(&mut rng, x, y) {
                    maps.push(phi);
                }
            }
        }
        let bound = (*config.epsilon_sizes.end()).max(1);
        report.merge(epsilon_report(&spaces, &maps, bound)?.to_check_report());
        if let Some(max) = config.faithful_sizes.clone().last() {
            report.merge(faithfulness_report(max)?);
            report.merge(conjugation_report(max)?);
        }
        for n in config.colimit_sizes.clone() {
            let cert = colimit_certificate(&FiniteBoolSpace::numbered("x", n))?;
            report.record(cert.passed(), || format!("colimit certificate fails on {n} points: {cert:?}"));
        }
        Ok(())
    })
}

/// `θ` on every algebra up to the exhaustive size with every hom between
/// them, and on random larger algebras and homs.
pub fn theta_suite(config: &VerifyConfig, _corpus: &Corpus) -> CheckReport {
    run_suite("theta", |report| {
        let exhaustive = EXHAUSTIVE_ATOMS;
        let algebras: Vec<BoolAlg> =
            config.theta_atoms.clone().map(|n| BoolAlg::numbered("a", n)).collect::<Result<_>>()?;
        let mut homs = Vec::new();
        for b in &algebras {
            for c in &algebras {
                let (n, m) = (b.atom_count(), c.atom_count());
                for code in 0..n.pow(m as u32) {
                    let dual = (0..m).map(|t| code / n.pow(t as u32) % n).collect();
                    homs.push(BAHom::new(b, c, dual)?);
                }
            }
        }
        let seed = config.seed;
        report.merge(
            theta_report(&algebras, &homs, config.lattice, exhaustive, config.pair_samples, seed)?.to_check_report(),
        );

        let mut rng = config.rng(11);
        let mut random = Vec::new();
        let mut random_homs = Vec::new();
        for _ in 0..config.theta_random {
            let b = random_algebra(&mut rng, config.random_atoms, "b")?;
            let c = random_algebra(&mut rng, config.random_atoms, "c")?;
            random_homs.push(random_ba_hom(&mut rng, &b, &c)?);
            random.push(b);
        }
        report.merge(
            theta_report(&random, &random_homs, config.lattice, exhaustive, config.pair_samples, seed ^ 1)?
                .to_check_report(),
        );
        Ok(())
    })
}
