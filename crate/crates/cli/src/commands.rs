//! One function per verb. Each returns a JSON value plus, for checks,
//! whether they passed.

use std::fmt;
use std::io::Read;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use stonevn_core::boolean::{clopen, clopen_of_map, j_iso, stone, stone_of_hom, BoolAlg, IdempotentLattice, JoinRule};
use stonevn_core::duality::{epsilon_report, k_check, k_check_of_hom, khat, khat_of_map, theta_report};
use stonevn_core::expr::SmoothExpr;
use stonevn_core::field::{Backend, Rational, RealApprox, Scalar};
use stonevn_core::format::{
    self, BAElementDoc, BAHomDoc, BoolAlgDoc, ElementDoc, HomDoc, MapDoc, PartitionDoc, RingDoc, SpaceDoc, SystemDoc,
};
use stonevn_core::report::CheckReport;
use stonevn_core::ring::{
    check_composition_axiom, check_projection_axiom, d_infinity, idempotent_of, idempotents, localize_at_element,
    localize_at_idempotent, quasi_inverse, residue_field_check, spec, Componentwise, CompositionSettings, Idempotent,
    Localization, PrimePoint, ProductRing,
};
use stonevn_core::space::{delta_functor, limit, quotient, FiniteBoolSpace, ProfiniteModel};
use stonevn_core::verify::{full_pipeline_verify, random_elements, VerifyConfig};
use stonevn_core::Error;

use crate::{BaOp, Command, Global, Morphism};

/// Exhaustive size and sample count used by the single-instance checks.
const EXHAUSTIVE: usize = 5;
const PAIR_SAMPLES: usize = 64;

pub struct Outcome {
    pub value: Value,
    /// `None` for plain computations.
    pub passed: Option<bool>,
    /// Human-readable lines printed to stderr after JSON output.
    pub summary: Vec<String>,
}

impl Outcome {
    fn value(value: impl Serialize) -> Res<Self> {
        Ok(Outcome { value: to_value(value)?, passed: None, summary: Vec::new() })
    }

    fn check(value: impl Serialize, passed: bool) -> Res<Self> {
        Ok(Outcome { value: to_value(value)?, passed: Some(passed), summary: Vec::new() })
    }
}

#[derive(Debug)]
pub struct Failure(String);

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure(err.to_string())
    }
}

type Res<T> = Result<T, Failure>;

fn to_value(value: impl Serialize) -> Res<Value> {
    serde_json::to_value(value).map_err(|e| Failure(format!("cannot serialize: {e}")))
}

fn read(path: &Path) -> Res<String> {
    let mut text = String::new();
    let result = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    result.map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn load<T: DeserializeOwned>(path: &Path) -> Res<T> {
    format::parse(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn ring(path: &Path) -> Res<ProductRing> {
    Ok(load::<RingDoc>(path)?.to_ring()?)
}

fn space(path: &Path) -> Res<FiniteBoolSpace> {
    Ok(load::<SpaceDoc>(path)?.to_space()?)
}

fn algebra(path: &Path) -> Res<BoolAlg> {
    Ok(load::<BoolAlgDoc>(path)?.to_alg()?)
}

fn bounded(what: &'static str, size: usize, bound: usize) -> Res<()> {
    if size > bound {
        return Err(Error::Resource { what, size, bound }.into());
    }
    Ok(())
}

fn backend(tag: &str) -> Res<Backend> {
    Ok(Backend::from_tag(tag)?)
}

/// Calls `f::<Rational>` or `f::<RealApprox>` according to the ring.
macro_rules! by_backend {
    ($ring:expr, $f:ident ( $($arg:expr),* )) => {
        match $ring.backend() {
            Backend::Rational => $f::<Rational>($($arg),*),
            Backend::Real => $f::<RealApprox>($($arg),*),
        }
    };
}

pub fn run(command: &Command, global: &Global) -> Res<Outcome> {
    match command {
        Command::QuasiInverse { ring: r, element } => {
            let ring = ring(r)?;
            by_backend!(ring, quasi_inverse_of(&ring, &load(element)?))
        }
        Command::IdempotentOf { ring: r, element } => {
            let ring = ring(r)?;
            by_backend!(ring, idempotent_witness(&ring, &load(element)?))
        }
        Command::Idempotents { ring: r } => {
            let ring = ring(r)?;
            by_backend!(ring, all_idempotents(&ring, global.max_points))
        }
        Command::Localize { ring: r, element, idempotent } => {
            let ring = ring(r)?;
            let loc = match (element, idempotent) {
                (Some(path), _) => by_backend!(ring, localize_element(&ring, &load(path)?))?,
                (None, Some(path)) => by_backend!(ring, localize_idempotent(&ring, &load(path)?))?,
                (None, None) => return Err(Failure("give --element or --idempotent".into())),
            };
            Outcome::value(json!({
                "ring": RingDoc::from_ring(&loc.ring),
                "hom": HomDoc::from_hom(&loc.hom),
            }))
        }
        Command::Spec { ring: r } => Outcome::value(SpaceDoc::from_space(&spec(&ring(r)?, global.max_points)?)),
        Command::DInf { ring: r, element } => {
            let ring = ring(r)?;
            let open = by_backend!(ring, basic_open(&ring, &load(element)?))?;
            Outcome::value(json!({ "subset": open }))
        }
        Command::ResidueCheck { ring: r, point, samples } => {
            let ring = ring(r)?;
            let index = ring.index_of(point).ok_or_else(|| Failure(format!("no coordinate named {point:?}")))?;
            let elements = random_elements(&ring, *samples, global.seed)?;
            let report = residue_field_check(&ring, PrimePoint { index }, &elements)?;
            let passed = report.passed();
            Outcome::check(report, passed)
        }
        Command::BaOps { algebra: a, op, x, y } => {
            let alg = algebra(a)?;
            let x = load::<BAElementDoc>(x)?.to_element(&alg)?;
            let other = || -> Res<_> {
                let path = y.as_ref().ok_or_else(|| Failure("--y is required for binary operations".into()))?;
                Ok(load::<BAElementDoc>(path)?.to_element(&alg)?)
            };
            let result = match op {
                BaOp::Meet => x.meet(&other()?)?,
                BaOp::Join => x.join(&other()?)?,
                BaOp::Complement => x.complement(),
            };
            Outcome::value(BAElementDoc::from_element(&result))
        }
        Command::Stone { algebra: a, morphism } => {
            let b = algebra(a)?;
            match codomain(morphism) {
                Some((hom, c)) => {
                    let c = algebra(c)?;
                    let h = load::<BAHomDoc>(hom)?.to_hom(&b, &c)?;
                    Outcome::value(MapDoc::from_map(&stone_of_hom(&h)?))
                }
                None => Outcome::value(SpaceDoc::from_space(&stone(&b)?)),
            }
        }
        Command::Clopen { space: s, morphism } => {
            let x = space(s)?;
            match codomain(morphism) {
                Some((map, y)) => {
                    let y = space(y)?;
                    let f = load::<MapDoc>(map)?.to_map(&x, &y)?;
                    Outcome::value(BAHomDoc::from_hom(&clopen_of_map(&f)?))
                }
                None => {
                    let alg = clopen(&x)?;
                    let mut outcome = Outcome::value(BoolAlgDoc::from_alg(&alg))?;
                    if alg.is_degenerate() {
                        outcome.summary.push("warning: the empty space gives the one-element algebra".into());
                    }
                    Ok(outcome)
                }
            }
        }
        Command::J { ring: r, element } => {
            let ring = ring(r)?;
            bounded("ring for j", ring.len(), global.max_points)?;
            let j = j_iso(&ring)?;
            if let Some(path) = element {
                let e = Idempotent::try_from_element(load::<ElementDoc>(path)?.to_element::<Rational>(&ring)?)?;
                return Outcome::value(BAElementDoc::from_element(&j.forward(&e)?));
            }
            let mut table = Vec::new();
            for e in idempotents::<Rational>(&ring, global.max_points)? {
                table.push(json!({
                    "idempotent": ElementDoc::from_element(e.element()),
                    "clopen": j.forward(&e)?.atom_names(),
                }));
            }
            let report = j.verify(IdempotentLattice::default(), EXHAUSTIVE, PAIR_SAMPLES, global.seed)?;
            let passed = report.passed();
            Outcome::check(json!({ "table": table, "report": report }), passed)
        }
        Command::Quotient { space: s, partition } => {
            let x = space(s)?;
            let relation = load::<PartitionDoc>(partition)?.to_relation(&x)?;
            let (q, p) = quotient(&x, &relation)?;
            Outcome::value(json!({
                "space": SpaceDoc::from_space(&q),
                "projection": MapDoc::from_map(&p),
            }))
        }
        Command::Limit { system } => {
            let system = load::<SystemDoc>(system)?.to_system()?;
            let lim = limit(&system)?;
            let threads: serde_json::Map<String, Value> = lim
                .threads()
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    let names: Vec<&str> = t.iter().enumerate().map(|(l, &p)| system.levels()[l].name(p)).collect();
                    (lim.space().name(i).to_owned(), json!(names))
                })
                .collect();
            let projections: Vec<MapDoc> = lim.projections().iter().map(MapDoc::from_map).collect();
            Outcome::value(json!({
                "space": SpaceDoc::from_space(lim.space()),
                "threads": threads,
                "projections": projections,
            }))
        }
        Command::Delta { space: s } => {
            let x = space(s)?;
            let model = ProfiniteModel::for_space(&x, global.seed)?;
            let (delta, report) = model.delta_report()?;
            let passed = report.is_homeomorphism() && model.cone_commutes();
            Outcome::check(
                json!({
                    "map": MapDoc::from_map(&delta),
                    "report": report,
                    "cone_commutes": model.cone_commutes(),
                }),
                passed,
            )
        }
        Command::DeltaMap { space: s, map, codomain: c } => {
            let (x, y) = (space(s)?, space(c)?);
            let f = load::<MapDoc>(map)?.to_map(&x, &y)?;
            let source = ProfiniteModel::for_space(&x, global.seed)?;
            let target = ProfiniteModel::for_space(&y, global.seed)?;
            Outcome::value(MapDoc::from_map(&delta_functor(&f, &source, &target)?))
        }
        Command::Khat { space: s, field, morphism } => {
            let (x, backend) = (space(s)?, backend(field)?);
            match codomain(morphism) {
                Some((map, y)) => {
                    let y = space(y)?;
                    let f = load::<MapDoc>(map)?.to_map(&x, &y)?;
                    Outcome::value(HomDoc::from_hom(&khat_of_map(&f, backend)?))
                }
                None => Outcome::value(RingDoc::from_ring(&khat(&x, backend))),
            }
        }
        Command::Kcheck { algebra: a, field, morphism } => {
            let (b, backend) = (algebra(a)?, backend(field)?);
            match codomain(morphism) {
                Some((hom, c)) => {
                    let c = algebra(c)?;
                    let h = load::<BAHomDoc>(hom)?.to_hom(&b, &c)?;
                    Outcome::value(HomDoc::from_hom(&k_check_of_hom(&h, backend)?))
                }
                None => Outcome::value(RingDoc::from_ring(&k_check(&b, backend)?)),
            }
        }
        Command::Epsilon { space: s, morphism } => {
            let x = space(s)?;
            let mut spaces = vec![x.clone()];
            let mut maps = Vec::new();
            if let Some((map, y)) = codomain(morphism) {
                let y = space(y)?;
                maps.push(load::<MapDoc>(map)?.to_map(&x, &y)?);
                spaces.push(y);
            }
            for s in &spaces {
                bounded("space for epsilon", s.len(), global.max_points)?;
            }
            let report = epsilon_report(&spaces, &maps, global.max_points)?;
            let passed = report.passed();
            Outcome::check(report, passed)
        }
        Command::Theta { algebra: a, morphism } => {
            let b = algebra(a)?;
            let mut algebras = vec![b.clone()];
            let mut homs = Vec::new();
            if let Some((hom, c)) = codomain(morphism) {
                let c = algebra(c)?;
                homs.push(load::<BAHomDoc>(hom)?.to_hom(&b, &c)?);
                algebras.push(c);
            }
            for alg in &algebras {
                bounded("algebra for theta", alg.atom_count(), global.max_points)?;
            }
            let lattice = IdempotentLattice::default();
            let report = theta_report(&algebras, &homs, lattice, EXHAUSTIVE, PAIR_SAMPLES, global.seed)?;
            let passed = report.passed();
            Outcome::check(report, passed)
        }
        Command::Verify { break_join } => {
            let mut config = VerifyConfig::with_seed(global.seed);
            config.smooth.tolerance = global.tolerance;
            if *break_join {
                config.lattice = IdempotentLattice::with_join(JoinRule::SymmetricDifference);
            }
            let report = full_pipeline_verify(&config);
            let mut summary: Vec<String> = report.suites.iter().map(summary_line).collect();
            summary.extend(report.warnings.iter().map(|w| format!("warning: {w}")));
            summary.push(format!(
                "{}: {} checks, {} failed",
                if report.passed { "PASS" } else { "FAIL" },
                report.checked,
                report.failed
            ));
            let passed = report.passed;
            let mut outcome = Outcome::check(report, passed)?;
            outcome.summary = summary;
            Ok(outcome)
        }
        Command::CheckSmoothAxioms { points, samples, depth } => {
            let ring = ProductRing::new((1..=*points).map(|i| format!("s{i}")), Backend::Real)?;
            let settings = CompositionSettings {
                samples: *samples,
                max_arity: 4,
                depth: *depth,
                tolerance: global.tolerance,
                seed: global.seed,
            };
            let mut report = CheckReport::new("smooth axioms");
            report.merge(check_projection_axiom(&Componentwise, &ring, *samples, 4, global.seed)?);
            report.merge(check_composition_axiom(&Componentwise, &ring, settings)?);
            let passed = report.passed();
            Outcome::check(report, passed)
        }
        Command::Eval { expr, point } => {
            let f = SmoothExpr::parse(expr)?;
            let point = point.iter().map(|&x| RealApprox::new(x)).collect::<Result<Vec<_>, _>>()?;
            let value = f.eval(&point)?;
            Outcome::value(json!({ "value": value.value() }))
        }
    }
}

fn summary_line(suite: &CheckReport) -> String {
    let status = if suite.passed() { "PASS" } else { "FAIL" };
    let mut line = format!("{status}  {:<24} {} checked", suite.name, suite.checked);
    if suite.failed > 0 {
        line.push_str(&format!(", {} failed", suite.failed));
    }
    line
}

fn codomain(m: &Morphism) -> Option<(&Path, &Path)> {
    match (&m.map, &m.codomain) {
        (Some(map), Some(codomain)) => Some((map.as_path(), codomain.as_path())),
        _ => None,
    }
}

fn quasi_inverse_of<F: Scalar>(ring: &ProductRing, doc: &ElementDoc) -> Res<Outcome> {
    let a = doc.to_element::<F>(ring)?;
    Outcome::value(ElementDoc::from_element(&quasi_inverse(&a)?))
}

fn idempotent_witness<F: Scalar>(ring: &ProductRing, doc: &ElementDoc) -> Res<Outcome> {
    let w = idempotent_of(&doc.to_element::<F>(ring)?)?;
    Outcome::value(json!({
        "idempotent": ElementDoc::from_element(w.idempotent.element()),
        "y": ElementDoc::from_element(&w.y),
        "z": ElementDoc::from_element(&w.z),
    }))
}

fn all_idempotents<F: Scalar>(ring: &ProductRing, bound: usize) -> Res<Outcome> {
    let all: Vec<ElementDoc> =
        idempotents::<F>(ring, bound)?.iter().map(|e| ElementDoc::from_element(e.element())).collect();
    Outcome::value(json!({ "idempotents": all }))
}

fn localize_element<F: Scalar>(ring: &ProductRing, doc: &ElementDoc) -> Res<Localization> {
    Ok(localize_at_element(&doc.to_element::<F>(ring)?)?)
}

fn localize_idempotent<F: Scalar>(ring: &ProductRing, doc: &ElementDoc) -> Res<Localization> {
    let e = Idempotent::try_from_element(doc.to_element::<F>(ring)?)?;
    Ok(localize_at_idempotent(ring, &e)?)
}

fn basic_open<F: Scalar>(ring: &ProductRing, doc: &ElementDoc) -> Res<Vec<String>> {
    let a = doc.to_element::<F>(ring)?;
    Ok(d_infinity(&a).into_iter().map(|i| ring.name(i).to_owned()).collect())
}
