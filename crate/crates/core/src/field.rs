//! Scalar backends for ring coordinates.
//!
//! [`Rational`] is exact and is what every ring-theoretic check runs on.
//! [`RealApprox`] is a finite `f64` used where smooth functions have to be
//! evaluated.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Which scalar field a product ring is built over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Backend {
    /// Exact rationals, written `"Q"`.
    Rational,
    /// Double-precision reals, written `"R"`.
    Real,
}

impl Backend {
    pub fn tag(self) -> &'static str {
        match self {
            Backend::Rational => "Q",
            Backend::Real => "R",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        match tag {
            "Q" => Ok(Backend::Rational),
            "R" => Ok(Backend::Real),
            other => Err(Error::Contract(format!("unknown field tag {other:?}"))),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Field operations shared by both backends.
///
/// Arithmetic is fallible because [`RealApprox`] refuses to leave the finite
/// reals; the [`Rational`] implementations never fail except on inversion of
/// zero.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const BACKEND: Backend;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn field_add(&self, other: &Self) -> Result<Self>;
    fn field_mul(&self, other: &Self) -> Result<Self>;
    fn field_neg(&self) -> Self;
    fn field_inverse(&self) -> Result<Self>;
    /// Parses the textual literal used in element files.
    fn parse_literal(text: &str) -> Result<Self>;

    fn field_sub(&self, other: &Self) -> Result<Self> {
        self.field_add(&other.field_neg())
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// An exact rational number, always stored in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self> {
        let denominator = denominator.into();
        if denominator.is_zero() {
            return Err(Error::ZeroDivision);
        }
        // `Ratio::new` reduces and normalises the sign onto the numerator.
        Ok(Rational(BigRational::new(numerator.into(), denominator)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.0.is_zero() {
            Err(Error::ZeroDivision)
        } else {
            Ok(Rational(self.0.recip()))
        }
    }

    /// Nearest `f64`, used when a rational constant feeds a real evaluation.
    pub fn to_f64(&self) -> f64 {
        use num::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Parse { line: 1, column: 1, message: format!("not a rational literal: {text:?}") };
        let text = text.trim();
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (text, None),
        };
        let numerator = BigInt::from_str(num).map_err(|_| bad())?;
        match den {
            None => Ok(Rational::from_integer(numerator)),
            Some(d) => {
                let denominator = BigInt::from_str(d).map_err(|_| bad())?;
                if !denominator.is_positive() {
                    return Err(bad());
                }
                Rational::new(numerator, denominator)
            }
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl Sub for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Scalar for Rational {
    const BACKEND: Backend = Backend::Rational;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(n)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn field_add(&self, other: &Self) -> Result<Self> {
        Ok(self + other)
    }

    fn field_mul(&self, other: &Self) -> Result<Self> {
        Ok(self * other)
    }

    fn field_neg(&self) -> Self {
        -self
    }

    fn field_inverse(&self) -> Result<Self> {
        self.recip()
    }

    fn parse_literal(text: &str) -> Result<Self> {
        text.parse()
    }

    fn field_sub(&self, other: &Self) -> Result<Self> {
        Ok(self - other)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// A finite double-precision real.
#[derive(Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct RealApprox(f64);

impl RealApprox {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() {
            Ok(RealApprox(value))
        } else {
            Err(Error::Domain(format!("non-finite real {value}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for RealApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Shortest representation that parses back to the same bits.
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Debug for RealApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Scalar for RealApprox {
    const BACKEND: Backend = Backend::Real;

    fn zero() -> Self {
        RealApprox(0.0)
    }

    fn one() -> Self {
        RealApprox(1.0)
    }

    fn from_i64(n: i64) -> Self {
        RealApprox(n as f64)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0.0
    }

    fn field_add(&self, other: &Self) -> Result<Self> {
        RealApprox::new(self.0 + other.0)
    }

    fn field_mul(&self, other: &Self) -> Result<Self> {
        RealApprox::new(self.0 * other.0)
    }

    fn field_neg(&self) -> Self {
        RealApprox(-self.0)
    }

    fn field_inverse(&self) -> Result<Self> {
        if self.0 == 0.0 {
            return Err(Error::ZeroDivision);
        }
        RealApprox::new(1.0 / self.0)
    }

    fn parse_literal(text: &str) -> Result<Self> {
        let value: f64 = text.trim().parse().map_err(|_| Error::Parse {
            line: 1,
            column: 1,
            message: format!("not a decimal literal: {text:?}"),
        })?;
        RealApprox::new(value)
    }
}
