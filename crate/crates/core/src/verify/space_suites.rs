//! Suites for quotients, limits and the limit-map functor.

use rand::Rng;

use super::{bell_numbers, random_map, run_suite, Corpus, VerifyConfig};
use crate::report::CheckReport;
use crate::space::{
    all_equiv_relations, all_maps, delta_functor, induced_quotient_map, pullback_relation, quotient, ContinuousMap,
    FiniteBoolSpace, ProfiniteModel,
};
use crate::Result;

/// `δ` is a bijection onto the limit of the full partition lattice, the
/// limit projections form a cone, and the lattice has Bell-many levels.
pub fn delta_suite(config: &VerifyConfig, _corpus: &Corpus) -> CheckReport {
    run_suite("delta", |report| {
        let bells = bell_numbers(*config.delta_sizes.end());
        for n in config.delta_sizes.clone() {
            let model = ProfiniteModel::full(&FiniteBoolSpace::numbered("p", n))?;
            let (_, delta) = model.delta_report()?;
            report.record(delta.is_homeomorphism(), || format!("δ is not bijective on {n} points: {delta:?}"));
            report.record(model.cone_commutes(), || format!("limit cone fails on {n} points"));
            report.record(delta.levels as u64 == bells[n], || {
                format!("{} partitions of {n} points, expected {}", delta.levels, bells[n])
            });
        }
        Ok(())
    })
}

fn models(sizes: impl Iterator<Item = usize>) -> Result<Vec<ProfiniteModel>> {
    sizes.map(|n| ProfiniteModel::full(&FiniteBoolSpace::numbered(&format!("x{n}_"), n))).collect()
}

/// Identity, composition and naturality for `f ↦ f̌`; the induced quotient
/// maps are injective and their squares commute.
fn check_map(
    report: &mut CheckReport,
    f: &ContinuousMap,
    source: &ProfiniteModel,
    target: &ProfiniteModel,
) -> Result<ContinuousMap> {
    let f_check = delta_functor(f, source, target)?;
    let lhs = f_check.compose(&source.delta()?)?;
    let rhs = target.delta()?.compose(f)?;
    report.record(lhs == rhs, || format!("f̌∘δ ≠ δ∘f for {:?}", f.table()));
    for r in target.relations() {
        let induced = induced_quotient_map(f, r)?;
        report.record(induced.is_injective(), || format!("induced map not injective for {:?}", f.table()));
        let (_, p_source) = quotient(f.domain(), &pullback_relation(f, r)?)?;
        let (_, p_target) = quotient(f.codomain(), r)?;
        let square = induced.compose(&p_source)? == p_target.compose(f)?;
        report.record(square, || format!("quotient square fails for {:?}", f.table()));
    }
    Ok(f_check)
}

/// The limit-map functor on every map between small spaces and on random
/// maps between larger ones, plus pullback monotonicity and the
/// composite-pullback identity.
pub fn delta_functor_suite(config: &VerifyConfig, _corpus: &Corpus) -> CheckReport {
    run_suite("limit maps", |report| {
        let small = models(config.delta_map_sizes.clone())?;
        for m in &small {
            let id = delta_functor(&ContinuousMap::identity(m.space()), m, m)?;
            report.record(id == ContinuousMap::identity(m.limit().space()), || {
                format!("identity fails on {} points", m.space().len())
            });
        }
        for x in &small {
            for y in &small {
                for f in all_maps(x.space(), y.space()) {
                    let f_check = check_map(report, &f, x, y)?;
                    for z in &small {
                        for g in all_maps(y.space(), z.space()) {
                            let g_check = delta_functor(&g, y, z)?;
                            let gf_check = delta_functor(&g.compose(&f)?, x, z)?;
                            report.record(gf_check == g_check.compose(&f_check)?, || {
                                format!("(g∘f)̌ ≠ ǧ∘f̌ for {:?}, {:?}", f.table(), g.table())
                            });
                        }
                    }
                }
            }
        }

        let larger = models(0..=config.delta_random_points)?;
        let mut rng = config.rng(9);
        let mut drawn = 0;
        while drawn < config.delta_random_maps {
            let x = &larger[rng.gen_range(0..larger.len())];
            let y = &larger[rng.gen_range(0..larger.len())];
            let z = &larger[rng.gen_range(0..larger.len())];
            let (Some(f), Some(g)) =
                (random_map(&mut rng, x.space(), y.space()), random_map(&mut rng, y.space(), z.space()))
            else {
                continue;
            };
            drawn += 1;
            let f_check = check_map(report, &f, x, y)?;
            let g_check = delta_functor(&g, y, z)?;
            let gf_check = delta_functor(&g.compose(&f)?, x, z)?;
            report.record(gf_check == g_check.compose(&f_check)?, || {
                format!("(g∘f)̌ ≠ ǧ∘f̌ for {:?}, {:?}", f.table(), g.table())
            });
        }

        let spaces: Vec<FiniteBoolSpace> =
            config.pullback_sizes.clone().map(|n| FiniteBoolSpace::numbered(&format!("y{n}_"), n)).collect();
        for x in &spaces {
            for y in &spaces {
                let relations = all_equiv_relations(y)?;
                for f in all_maps(x, y) {
                    for r1 in &relations {
                        let p1 = pullback_relation(&f, r1)?;
                        for r2 in relations.iter().filter(|r2| r1.is_finer_than(r2)) {
                            report.record(p1.is_finer_than(&pullback_relation(&f, r2)?), || {
                                format!("pullback along {:?} is not monotone", f.table())
                            });
                        }
                    }
                    for z in &spaces {
                        let relations_z = all_equiv_relations(z)?;
                        for g in all_maps(y, z) {
                            let gf = g.compose(&f)?;
                            for r in &relations_z {
                                let direct = pullback_relation(&gf, r)?;
                                let stepwise = pullback_relation(&f, &pullback_relation(&g, r)?)?;
                                report.record(direct == stepwise, || {
                                    format!("composite pullback fails for {:?}, {:?}", f.table(), g.table())
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    })
}
