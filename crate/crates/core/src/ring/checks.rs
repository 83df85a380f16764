//! Equalizers and the reducedness check.

use rand::Rng;

use super::regular::quasi_inverse;
use super::{ProductRing, RingElement, RingHom};
use crate::error::{contract, Result};
use crate::field::{Rational, Scalar};
use crate::report::CheckReport;

/// `E = {a ∈ A : f(a) = g(a)}` for two homs `A → B`.
#[derive(Debug, Clone)]
pub struct Equalizer {
    f: RingHom,
    g: RingHom,
    /// class of each index under the relation generated by
    /// `dual_f(t) ~ dual_g(t)`; members are exactly the elements constant on
    /// classes
    classes: Vec<usize>,
}

pub fn equalizer(f: &RingHom, g: &RingHom) -> Result<Equalizer> {
    if f.domain() != g.domain() || f.codomain() != g.codomain() {
        return Err(contract("equalizer needs two parallel homomorphisms"));
    }
    let n = f.domain().len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (&s, &t) in f.dual().iter().zip(g.dual()) {
        let (a, b) = (root(&mut parent, s), root(&mut parent, t));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let classes = (0..n).map(|x| root(&mut parent, x)).collect();
    Ok(Equalizer { f: f.clone(), g: g.clone(), classes })
}

impl Equalizer {
    pub fn domain(&self) -> &ProductRing {
        self.f.domain()
    }

    pub fn contains<F: Scalar>(&self, a: &RingElement<F>) -> Result<bool> {
        Ok(self.f.apply(a)? == self.g.apply(a)?)
    }

    /// A random member: one random rational per class, about a third of
    /// them zero.
    pub fn sample_member<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<RingElement<Rational>> {
        let values: Vec<Rational> = (0..self.classes.len())
            .map(|_| {
                if rng.gen_bool(1.0 / 3.0) {
                    Rational::zero()
                } else {
                    Rational::new(rng.gen_range(-12i64..=12), rng.gen_range(1i64..=7)).expect("positive denominator")
                }
            })
            .collect();
        RingElement::from_fn(self.domain(), |s| values[self.classes[s]].clone())
    }

    /// Samples members and checks that sums, products and quasi-inverses
    /// stay inside `E`.
    pub fn closure_report<R: Rng + ?Sized>(&self, samples: usize, rng: &mut R) -> Result<CheckReport> {
        let mut report = CheckReport::new("equalizer closure");
        let members = (0..samples).map(|_| self.sample_member(rng)).collect::<Result<Vec<_>>>()?;
        for (i, a) in members.iter().enumerate() {
            report.record(self.contains(a)?, || format!("sample {:?} is not a member", a.to_named()));
            let b = &members[(i + 1) % members.len()];
            report.record(self.contains(&a.add(b)?)?, || "not closed under +".to_owned());
            report.record(self.contains(&a.mul(b)?)?, || "not closed under ·".to_owned());
            report
                .record(self.contains(&quasi_inverse(a)?)?, || format!("quasi-inverse of {:?} escapes", a.to_named()));
        }
        Ok(report)
    }
}

/// Minimal ring interface for the reducedness check, so that it can also
/// be pointed at rings with nilpotents.
pub trait SampledRing {
    type Element: Clone + std::fmt::Debug;

    fn mul(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element>;
    fn is_zero(&self, a: &Self::Element) -> bool;
}

impl SampledRing for ProductRing {
    type Element = RingElement<Rational>;

    fn mul(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element> {
        if a.ring() != self {
            return Err(contract("sample is not an element of the ring"));
        }
        a.mul(b)
    }

    fn is_zero(&self, a: &Self::Element) -> bool {
        a.is_zero()
    }
}

/// No nonzero sample has `a^k = 0` for `2 ≤ k ≤ max_power`.
pub fn reducedness_check<R: SampledRing>(ring: &R, samples: &[R::Element], max_power: u32) -> Result<CheckReport> {
    let mut report = CheckReport::new("reducedness");
    for a in samples {
        let mut power = a.clone();
        let mut nilpotent = false;
        for _ in 2..=max_power {
            power = ring.mul(&power, a)?;
            if ring.is_zero(&power) {
                nilpotent = true;
                break;
            }
        }
        report.record(!nilpotent || ring.is_zero(a), || format!("{a:?} is a nonzero nilpotent"));
    }
    Ok(report)
}
