//! Suites for the regular-ring module.

use std::collections::BTreeSet;

use super::{random_hom, run_suite, Corpus, VerifyConfig};
use crate::field::{Backend, Rational};
use crate::report::CheckReport;
use crate::ring::{
    all_ideals, check_composition_axiom, check_projection_axiom, d_infinity, equalizer, idempotent_of, idempotents,
    is_maximal, localization_report, localize_at_element, minimal_quasi_inverse_witness, prime_points, prime_test,
    quasi_inverse, reducedness_check, regularity_witnesses, spec, Componentwise, PrincipalIdeal, ProductRing,
    RingElement, RingHom, DEFAULT_MAX_POINTS,
};

/// `a·b·a = a`, `b·a·b = b`, and `b` agrees with the quasi-inverse obtained
/// from a different solution of `a = a²x`.
pub fn quasi_inverse_suite(_config: &VerifyConfig, corpus: &Corpus) -> CheckReport {
    run_suite("quasi-inverse laws", |report| {
        for (_, elements) in &corpus.rings {
            for a in elements {
                let b = quasi_inverse(a)?;
                report.record(a.mul(&b)?.mul(a)? == *a, || format!("aba ≠ a for {:?}", a.to_named()));
                report.record(b.mul(a)?.mul(&b)? == b, || format!("bab ≠ b for {:?}", a.to_named()));
                let w = regularity_witnesses(a)?;
                let other = minimal_quasi_inverse_witness(a, &w.x)?;
                report.record(other == b, || format!("two quasi-inverses of {:?}", a.to_named()));
            }
        }
        Ok(())
    })
}

/// Witnesses for all three forms of regularity, and uniqueness of the
/// idempotent generator of `(a)` among all idempotents on small rings.
pub fn regularity_suite(config: &VerifyConfig, corpus: &Corpus) -> CheckReport {
    run_suite("regularity witnesses", |report| {
        for (ring, elements) in &corpus.rings {
            let all = if config.uniqueness_sizes.contains(&ring.len()) {
                Some(idempotents::<Rational>(ring, DEFAULT_MAX_POINTS)?)
            } else {
                None
            };
            for a in elements {
                let failed = regularity_witnesses(a)?.failed_identities()?;
                report.record(failed.is_empty(), || format!("{failed:?} fail for {:?}", a.to_named()));
                let w = idempotent_of(a)?;
                let e = w.idempotent.element();
                report.record(e.mul(&w.y)? == *a && a.mul(&w.z)? == *e, || {
                    format!("ideal witnesses fail for {:?}", a.to_named())
                });
                if let Some(all) = &all {
                    let ideal = PrincipalIdeal::generated_by(a)?;
                    let mut generators = Vec::new();
                    for f in all {
                        let fi = PrincipalIdeal::new(f.clone());
                        if fi.contains(a)? && ideal.contains(f.element())? {
                            generators.push(f.clone());
                        }
                    }
                    report.record(generators.len() == 1 && generators[0] == w.idempotent, || {
                        format!("{} idempotents generate ({:?})", generators.len(), a.to_named())
                    });
                }
            }
        }
        Ok(())
    })
}

/// No nonzero nilpotents in the corpus; on small rings every ideal is
/// enumerated and prime = maximal, `|Spec| = m`, and the spectrum is
/// discrete.
pub fn spectrum_suite(config: &VerifyConfig, corpus: &Corpus) -> CheckReport {
    run_suite("spectrum", |report| {
        for (ring, elements) in &corpus.rings {
            report.merge(reducedness_check(ring, elements, 4)?);
        }
        for m in config.ideal_sizes.clone() {
            let ring = ProductRing::rational(m);
            let ideals = all_ideals::<Rational>(&ring, DEFAULT_MAX_POINTS)?;
            let witnesses: Vec<_> = ideals.iter().map(|i| i.generator().element().clone()).collect();
            let mut primes = BTreeSet::new();
            let mut maximals = BTreeSet::new();
            for ideal in &ideals {
                if prime_test(ideal, &witnesses)? {
                    primes.insert(ideal.generator().mask());
                }
                if is_maximal(ideal, &ideals)? {
                    maximals.insert(ideal.generator().mask());
                }
            }
            report.record(primes == maximals, || format!("prime ≠ maximal on K^{m}"));
            report.record(primes.len() == m, || format!("{} primes on K^{m}", primes.len()));
            let points: BTreeSet<u64> = prime_points(&ring)
                .iter()
                .map(|p| p.ideal::<Rational>(&ring).map(|i| i.generator().mask()))
                .collect::<crate::Result<_>>()?;
            report.record(points == primes, || format!("prime points of K^{m} are not the primes"));
            let space = spec(&ring, DEFAULT_MAX_POINTS)?;
            report.record(space.len() == m, || format!("Spec(K^{m}) has {} points", space.len()));
            for p in 0..m {
                // {p} = D(δ_p) is open
                let open = d_infinity(&RingElement::<Rational>::unit_vector(&ring, p)?);
                report.record(open == vec![p], || format!("{{{p}}} is not a basic open of Spec(K^{m})"));
            }
        }
        Ok(())
    })
}

/// `A·e ≅ A/(1−e)` by explicit kernels for every idempotent of small
/// rings, and localizing at `a` makes `a` invertible.
pub fn localization_suite(config: &VerifyConfig, corpus: &Corpus) -> CheckReport {
    run_suite("localization", |report| {
        for m in config.localization_sizes.clone() {
            let ring = ProductRing::rational(m);
            for e in idempotents::<Rational>(&ring, DEFAULT_MAX_POINTS)? {
                report.merge(localization_report(&ring, &e)?);
            }
        }
        for (ring, elements) in &corpus.rings {
            if !config.localization_sizes.contains(&ring.len()) {
                continue;
            }
            for a in elements {
                let loc = localize_at_element(a)?;
                report.record(loc.hom.apply(a)?.is_unit(), || {
                    format!("{:?} is not inverted by localizing at it", a.to_named())
                });
            }
        }
        Ok(())
    })
}

/// Projection axiom bit for bit and composition axiom to tolerance, on
/// `ℝ^S`.
pub fn smooth_suite(config: &VerifyConfig, _corpus: &Corpus) -> CheckReport {
    run_suite("smooth structure", |report| {
        let ring = ProductRing::new((1..=config.smooth_points).map(|i| format!("s{i}")), Backend::Real)?;
        let settings = config.smooth;
        report.merge(check_projection_axiom(
            &Componentwise,
            &ring,
            settings.samples,
            settings.max_arity,
            settings.seed,
        )?);
        report.merge(check_composition_axiom(&Componentwise, &ring, settings)?);
        Ok(())
    })
}

/// Equalizers of random parallel pairs are closed under `+`, `·` and
/// quasi-inverse.
pub fn equalizer_suite(config: &VerifyConfig, _corpus: &Corpus) -> CheckReport {
    run_suite("equalizers", |report| {
        let mut rng = config.rng(13);
        for _ in 0..config.equalizer_pairs {
            let f = random_hom(&mut rng, 6)?;
            let dual = (0..f.codomain().len()).map(|_| rand::Rng::gen_range(&mut rng, 0..f.domain().len())).collect();
            let g = RingHom::new(f.domain(), f.codomain(), dual)?;
            let eq = equalizer(&f, &g)?;
            report.merge(eq.closure_report(config.equalizer_samples, &mut rng)?);
        }
        Ok(())
    })
}
