use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::PadicError;
use super::PadicNumber;
use crate::arith::pow_mod;

/// An element of the prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpElement {
    prime: u64,
    value: u64,
}

impl FpElement {
    pub fn new(prime: u64, value: i64) -> Result<Self, PadicError> {
        super::number::check_prime(prime)?;
        Ok(Self { prime, value: value.rem_euclid(prime as i64) as u64 })
    }

    pub(crate) fn from_reduced(prime: u64, value: u64) -> Self {
        debug_assert!(value < prime);
        Self { prime, value }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inverse(self) -> Result<Self, PadicError> {
        if self.value == 0 {
            return Err(PadicError::NotInvertible { prime: self.prime, precision: 1 });
        }
        Ok(Self { prime: self.prime, value: pow_mod(self.value, self.prime - 2, self.prime) })
    }
}

impl std::ops::Add for FpElement {
    type Output = Self;

    fn add(self, other: Self) -> Self {
        debug_assert_eq!(self.prime, other.prime);
        Self { prime: self.prime, value: (self.value + other.value) % self.prime }
    }
}

impl std::ops::Sub for FpElement {
    type Output = Self;

    fn sub(self, other: Self) -> Self {
        debug_assert_eq!(self.prime, other.prime);
        Self { prime: self.prime, value: (self.value + self.prime - other.value) % self.prime }
    }
}

impl std::ops::Mul for FpElement {
    type Output = Self;

    fn mul(self, other: Self) -> Self {
        debug_assert_eq!(self.prime, other.prime);
        let v = (self.value as u128 * other.value as u128) % self.prime as u128;
        Self { prime: self.prime, value: v as u64 }
    }
}

impl std::ops::Neg for FpElement {
    type Output = Self;

    fn neg(self) -> Self {
        Self { prime: self.prime, value: (self.prime - self.value) % self.prime }
    }
}

impl From<&PadicNumber> for FpElement {
    fn from(x: &PadicNumber) -> Self {
        FpElement::from_reduced(x.prime(), x.reduce_mod_p())
    }
}

/// A point (a : b) of P^1(F_p), normalized so the first nonzero coordinate is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProjectiveLineFp {
    a: FpElement,
    b: FpElement,
}

impl ProjectiveLineFp {
    pub fn new(a: FpElement, b: FpElement) -> Result<Self, PadicError> {
        if a.prime != b.prime {
            return Err(PadicError::PrimeMismatch(a.prime, b.prime));
        }
        if a.is_zero() && b.is_zero() {
            return Err(PadicError::ZeroLine);
        }
        if a.is_zero() {
            return Ok(Self { a, b: FpElement::from_reduced(b.prime, 1) });
        }
        let inv = a.inverse()?;
        Ok(Self { a: FpElement::from_reduced(a.prime, 1), b: b * inv })
    }

    pub fn from_ints(prime: u64, a: i64, b: i64) -> Result<Self, PadicError> {
        Self::new(FpElement::new(prime, a)?, FpElement::new(prime, b)?)
    }

    pub fn from_padic(a: &PadicNumber, b: &PadicNumber) -> Result<Self, PadicError> {
        Self::new(a.into(), b.into())
    }

    /// The cyclotomic line (1 : 0).
    pub fn cyclotomic(prime: u64) -> Self {
        Self { a: FpElement::from_reduced(prime, 1), b: FpElement::from_reduced(prime, 0) }
    }

    /// The anticyclotomic line (0 : 1).
    pub fn anticyclotomic(prime: u64) -> Self {
        Self { a: FpElement::from_reduced(prime, 0), b: FpElement::from_reduced(prime, 1) }
    }

    /// All p + 1 points: (1 : t) for t in F_p, then (0 : 1).
    pub fn all(prime: u64) -> Vec<Self> {
        let mut out: Vec<Self> = (0..prime)
            .map(|t| Self { a: FpElement::from_reduced(prime, 1), b: FpElement::from_reduced(prime, t) })
            .collect();
        out.push(Self::anticyclotomic(prime));
        out
    }

    pub fn prime(&self) -> u64 {
        self.a.prime
    }

    pub fn a(&self) -> FpElement {
        self.a
    }

    pub fn b(&self) -> FpElement {
        self.b
    }

    /// Integer representative (a, b) with 0 <= a, b < p.
    pub fn representative(&self) -> (u64, u64) {
        (self.a.value, self.b.value)
    }
}

impl fmt::Display for ProjectiveLineFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", self.a.value, self.b.value)
    }
}

impl ProjectiveLineFp {
    /// Parses `(a:b)`; the prime must be supplied separately.
    pub fn parse(prime: u64, s: &str) -> Result<Self, PadicError> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = inner.split_once(':').ok_or_else(|| PadicError::Parse(s.to_string()))?;
        let a = i64::from_str(a.trim()).map_err(|_| PadicError::Parse(s.to_string()))?;
        let b = i64::from_str(b.trim()).map_err(|_| PadicError::Parse(s.to_string()))?;
        Self::from_ints(prime, a, b)
    }
}

impl Serialize for ProjectiveLineFp {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Deserializes from `{"p": .., "line": "(a:b)"}`.
impl<'de> Deserialize<'de> for ProjectiveLineFp {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            p: u64,
            line: String,
        }
        let raw = Raw::deserialize(deserializer)?;
        Self::parse(raw.p, &raw.line).map_err(serde::de::Error::custom)
    }
}
