//! The C∞-structure on `ℝ^S`: a smooth `f : ℝⁿ → ℝ` acts on `n` ring
//! elements coordinatewise.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ProductRing, RingElement};
use crate::error::{contract, Error, Result};
use crate::expr::{compose, projection, random_expr_with, SmoothExpr};
use crate::field::{Backend, RealApprox};
use crate::report::CheckReport;

/// Anything that can interpret function symbols on a real product ring.
/// The axiom checks take this as a parameter so that a broken
/// interpretation can be shown to fail them.
pub trait Interpreter {
    fn interpret(&self, f: &SmoothExpr, args: &[RingElement<RealApprox>]) -> Result<RingElement<RealApprox>>;
}

/// The standard interpretation `(Φ(f)(a₁, …, aₙ))_s = f(a₁_s, …, aₙ_s)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Componentwise;

impl Interpreter for Componentwise {
    fn interpret(&self, f: &SmoothExpr, args: &[RingElement<RealApprox>]) -> Result<RingElement<RealApprox>> {
        interpret(f, args)
    }
}

pub fn interpret(f: &SmoothExpr, args: &[RingElement<RealApprox>]) -> Result<RingElement<RealApprox>> {
    if args.len() != f.arity() {
        return Err(contract(format!("function of arity {} applied to {} elements", f.arity(), args.len())));
    }
    let ring = args[0].ring();
    ring.require_backend(Backend::Real)?;
    if args.iter().any(|a| a.ring() != ring) {
        return Err(contract("arguments belong to different rings"));
    }
    let coords = (0..ring.len())
        .map(|s| {
            let point: Vec<RealApprox> = args.iter().map(|a| *a.coord(s)).collect();
            f.eval(&point)
        })
        .collect::<Result<Vec<_>>>()?;
    RingElement::new(ring, coords)
}

fn random_element<R: Rng>(rng: &mut R, ring: &ProductRing, range: f64) -> Result<RingElement<RealApprox>> {
    RingElement::new(
        ring,
        (0..ring.len()).map(|_| RealApprox::new(rng.gen_range(-range..=range))).collect::<Result<Vec<_>>>()?,
    )
}

/// `Φ(πₖ)(a₁, …, aₙ) = aₖ`, compared bit for bit, over `samples` random
/// choices of `1 ≤ k ≤ n ≤ max_arity` and arguments.
pub fn check_projection_axiom(
    interpreter: &impl Interpreter,
    ring: &ProductRing,
    samples: usize,
    max_arity: usize,
    seed: u64,
) -> Result<CheckReport> {
    ring.require_backend(Backend::Real)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::new("projection axiom");
    for _ in 0..samples {
        let n = rng.gen_range(1..=max_arity.max(1));
        let k = rng.gen_range(1..=n);
        let args = (0..n).map(|_| random_element(&mut rng, ring, 10.0)).collect::<Result<Vec<_>>>()?;
        let Some(value) = report.attempt("interpretation", interpreter.interpret(&projection(n, k)?, &args)) else {
            continue;
        };
        let exact = value.ring() == ring
            && value.coords().iter().zip(args[k - 1].coords()).all(|(a, b)| a.value().to_bits() == b.value().to_bits());
        report.record(exact, || format!("π_{k} of arity {n} did not return argument {k}"));
    }
    Ok(report)
}

/// Settings for [`check_composition_axiom`].
#[derive(Debug, Clone, Copy)]
pub struct CompositionSettings {
    pub samples: usize,
    /// Largest arity of the inner functions, i.e. the dimension `m` of `ℝ^m`.
    pub max_arity: usize,
    pub depth: usize,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for CompositionSettings {
    fn default() -> Self {
        CompositionSettings { samples: 1000, max_arity: 4, depth: 3, tolerance: 1e-9, seed: 0 }
    }
}

/// `Φ(h ∘ (g₁, …, gₙ)) = Φ(h) ∘ (Φ(g₁), …, Φ(gₙ))` to relative tolerance,
/// per coordinate, on random expressions and arguments.
///
/// Draws whose evaluation leaves the finite doubles are redrawn and
/// counted in the report notes.
pub fn check_composition_axiom(
    interpreter: &impl Interpreter,
    ring: &ProductRing,
    settings: CompositionSettings,
) -> Result<CheckReport> {
    ring.require_backend(Backend::Real)?;
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let mut report = CheckReport::new("composition axiom");
    let mut redrawn = 0usize;
    let mut done = 0usize;
    while done < settings.samples {
        if redrawn > settings.samples * 10 {
            report.fail("too many draws left the finite reals");
            break;
        }
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=settings.max_arity.max(1));
        let h = random_expr_with(&mut rng, n, settings.depth)?;
        let gs = (0..n).map(|_| random_expr_with(&mut rng, m, settings.depth)).collect::<Result<Vec<_>>>()?;
        let args = (0..m).map(|_| random_element(&mut rng, ring, 2.0)).collect::<Result<Vec<_>>>()?;
        let composite = compose(&h, &gs)?;
        let lhs = interpreter.interpret(&composite, &args);
        let rhs = gs
            .iter()
            .map(|g| interpreter.interpret(g, &args))
            .collect::<Result<Vec<_>>>()
            .and_then(|inner| interpreter.interpret(&h, &inner));
        let (lhs, rhs) = match (lhs, rhs) {
            (Ok(l), Ok(r)) => (l, r),
            (Err(Error::Domain(_)), _) | (_, Err(Error::Domain(_))) => {
                redrawn += 1;
                continue;
            }
            (Err(e), _) | (_, Err(e)) => {
                report.attempt::<()>("interpretation", Err(e));
                done += 1;
                continue;
            }
        };
        done += 1;
        let agree = lhs.ring() == rhs.ring()
            && lhs.coords().iter().zip(rhs.coords()).all(|(l, r)| {
                let (l, r) = (l.value(), r.value());
                (l - r).abs() <= settings.tolerance * (1.0 + l.abs())
            });
        report.record(agree, || format!("{composite} disagrees with {h} after ({})", join(&gs)));
    }
    if redrawn > 0 {
        report.note(format!("{redrawn} draws overflowed and were redrawn"));
    }
    Ok(report)
}

fn join(gs: &[SmoothExpr]) -> String {
    gs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(ring: &ProductRing, v: &[f64]) -> RingElement<RealApprox> {
        RingElement::new(ring, v.iter().map(|&x| RealApprox::new(x).unwrap()).collect()).unwrap()
    }

    /// Swaps the first two arguments before interpreting.
    struct SwappedArgs;

    impl Interpreter for SwappedArgs {
        fn interpret(&self, f: &SmoothExpr, args: &[RingElement<RealApprox>]) -> Result<RingElement<RealApprox>> {
            let mut args = args.to_vec();
            if args.len() >= 2 {
                args.swap(0, 1);
            }
            interpret(f, &args)
        }
    }

    /// Adds a small offset whenever the top node is a composition.
    struct LeakyComposition;

    impl Interpreter for LeakyComposition {
        fn interpret(&self, f: &SmoothExpr, args: &[RingElement<RealApprox>]) -> Result<RingElement<RealApprox>> {
            let value = interpret(f, args)?;
            if matches!(f.root(), crate::expr::Node::Compose { .. }) {
                value.map(|c| RealApprox::new(c.value() + 1e-3))
            } else {
                Ok(value)
            }
        }
    }

    #[test]
    fn interpret_examples() {
        let ring = ProductRing::real(2);
        let f = SmoothExpr::parse("sin(x1) + x2").unwrap();
        let a = real(&ring, &[0.0, std::f64::consts::FRAC_PI_2]);
        let b = real(&ring, &[1.0, 0.0]);
        assert_eq!(interpret(&f, &[a.clone(), b.clone()]).unwrap(), real(&ring, &[1.0, 1.0]));
        assert_eq!(interpret(&projection(2, 1).unwrap(), &[a.clone(), b]).unwrap(), a);

        let empty = ProductRing::real(0);
        let z = real(&empty, &[]);
        let v = interpret(&SmoothExpr::parse("exp(x1)").unwrap(), &[z.clone()]).unwrap();
        assert_eq!(v, z);
    }

    #[test]
    fn interpret_rejects_rational_rings() {
        let f = SmoothExpr::parse("x1").unwrap();
        let ring = ProductRing::rational(1);
        let a = RingElement::new(&ring, vec![crate::field::Rational::from_integer(1)]);
        assert!(a.is_ok());
        assert!(check_projection_axiom(&Componentwise, &ring, 1, 1, 0).is_err());
        assert!(interpret(&f, &[]).is_err());
    }

    #[test]
    fn projection_axiom_holds() {
        let ring = ProductRing::real(4);
        assert!(check_projection_axiom(&Componentwise, &ring, 1, 1, 0).unwrap().passed());
        let report = check_projection_axiom(&Componentwise, &ring, 100, 3, 1).unwrap();
        assert!(report.passed());
        assert_eq!(report.checked, 100);
    }

    #[test]
    fn projection_axiom_detects_corruption() {
        let ring = ProductRing::real(4);
        let report = check_projection_axiom(&SwappedArgs, &ring, 100, 3, 1).unwrap();
        assert!(!report.passed());
        assert!(!report.failures.is_empty());
    }

    #[test]
    fn composition_with_projection_outer() {
        let ring = ProductRing::real(3);
        let g = SmoothExpr::parse("cos(x1) * x2").unwrap();
        let c = compose(&projection(1, 1).unwrap(), std::slice::from_ref(&g)).unwrap();
        let a = real(&ring, &[0.1, 0.2, 0.3]);
        let b = real(&ring, &[-1.0, 2.0, 0.5]);
        assert_eq!(interpret(&c, &[a.clone(), b.clone()]).unwrap(), interpret(&g, &[a, b]).unwrap());
    }

    #[test]
    fn composition_axiom_holds_and_detects_corruption() {
        let ring = ProductRing::real(3);
        let settings = CompositionSettings::default();
        let report = check_composition_axiom(&Componentwise, &ring, settings).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.checked, settings.samples);
        let broken = check_composition_axiom(&LeakyComposition, &ring, settings).unwrap();
        assert!(!broken.passed());
    }
}
