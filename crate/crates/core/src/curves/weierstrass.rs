use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CurveError;
use crate::json::bigint_vec;

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeierstrassCurve {
    pub a1: BigInt,
    pub a2: BigInt,
    pub a3: BigInt,
    pub a4: BigInt,
    pub a6: BigInt,
}

/// The b- and c-invariants of a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub b2: BigInt,
    pub b4: BigInt,
    pub b6: BigInt,
    pub b8: BigInt,
    pub c4: BigInt,
    pub c6: BigInt,
    pub discriminant: BigInt,
}

fn invariants_of(a: [&BigInt; 5]) -> Invariants {
    let [a1, a2, a3, a4, a6] = a;
    let b2 = a1 * a1 + a2 * 4u32;
    let b4 = a1 * a3 + a4 * 2u32;
    let b6 = a3 * a3 + a6 * 4u32;
    let b8 = a1 * a1 * a6 + a2 * a6 * 4u32 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    let c4 = &b2 * &b2 - &b4 * 24u32;
    let c6 = -(&b2 * &b2 * &b2) + &b2 * &b4 * 36u32 - &b6 * 216u32;
    let discriminant = -(&b2 * &b2 * &b8) - &b4 * &b4 * &b4 * 8u32 - &b6 * &b6 * 27u32 + &b2 * &b4 * &b6 * 9u32;
    Invariants { b2, b4, b6, b8, c4, c6, discriminant }
}

impl WeierstrassCurve {
    pub fn new(ainvs: [BigInt; 5]) -> Result<Self, CurveError> {
        let [a1, a2, a3, a4, a6] = ainvs;
        let e = Self { a1, a2, a3, a4, a6 };
        if e.invariants().discriminant.is_zero() {
            return Err(CurveError::Singular);
        }
        Ok(e)
    }

    pub fn from_i64s(ainvs: [i64; 5]) -> Result<Self, CurveError> {
        Self::new(ainvs.map(BigInt::from))
    }

    pub fn from_slice(ainvs: &[BigInt]) -> Result<Self, CurveError> {
        let arr: [BigInt; 5] = ainvs
            .to_vec()
            .try_into()
            .map_err(|_| CurveError::Parse(format!("expected 5 a-invariants, got {}", ainvs.len())))?;
        Self::new(arr)
    }

    /// y^2 = x^3 + a x + b.
    pub fn short(a: BigInt, b: BigInt) -> Result<Self, CurveError> {
        Self::new([BigInt::zero(), BigInt::zero(), BigInt::zero(), a, b])
    }

    pub fn ainvs(&self) -> [BigInt; 5] {
        [self.a1.clone(), self.a2.clone(), self.a3.clone(), self.a4.clone(), self.a6.clone()]
    }

    pub fn invariants(&self) -> Invariants {
        invariants_of([&self.a1, &self.a2, &self.a3, &self.a4, &self.a6])
    }

    pub fn discriminant(&self) -> BigInt {
        self.invariants().discriminant
    }

    /// (discriminant, c4, c6).
    pub fn discriminant_c4_c6(&self) -> (BigInt, BigInt, BigInt) {
        let inv = self.invariants();
        (inv.discriminant, inv.c4, inv.c6)
    }

    pub fn j_invariant(&self) -> BigRational {
        let inv = self.invariants();
        BigRational::new(&inv.c4 * &inv.c4 * &inv.c4, inv.discriminant)
    }

    /// The model y^2 = x^3 - 27 c4 x - 54 c6, reached by x -> 36x + 3 b2.
    pub fn short_model(&self) -> Self {
        let inv = self.invariants();
        Self::short(-(inv.c4 * 27u32), -(inv.c6 * 54u32)).expect("isomorphic model is nonsingular")
    }

    /// Quadratic twist by d, returned on the short model
    /// y^2 = x^3 - 27 c4 d^2 x - 54 c6 d^3 (not minimalized).
    pub fn quadratic_twist(&self, d: i64) -> Result<Self, CurveError> {
        if d == 0 || d == 1 || !crate::arith::is_squarefree_i64(d) {
            return Err(CurveError::InvalidTwist(d));
        }
        let inv = self.invariants();
        let d = BigInt::from(d);
        Self::short(-(inv.c4 * 27u32 * &d * &d), -(inv.c6 * 54u32 * &d * &d * &d))
    }

    /// Applies x = u^2 x' + r, y = u^3 y' + s u^2 x' + t. Errors if the new
    /// coefficients are not integral.
    pub fn change_coordinates(&self, u: &BigInt, r: &BigInt, s: &BigInt, t: &BigInt) -> Result<Self, CurveError> {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let n1 = a1 + s * 2u32;
        let n2 = a2 - s * a1 + r * 3u32 - s * s;
        let n3 = a3 + r * a1 + t * 2u32;
        let n4 = a4 - s * a3 + r * a2 * 2u32 - (t + r * s) * a1 + r * r * 3u32 - s * t * 2u32;
        let n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        let mut out = Vec::with_capacity(5);
        let scaled = [(n1, 1u32), (n2, 2), (n3, 3), (n4, 4), (n6, 6)];
        for (n, k) in scaled {
            let uk = u.pow(k);
            if !(&n % &uk).is_zero() {
                return Err(CurveError::NonIntegral);
            }
            out.push(n / uk);
        }
        Self::from_slice(&out)
    }

    /// Value of 4x^3 + b2 x^2 + 2 b4 x + b6, the 2-division cubic, at x.
    pub fn two_division_value(&self, x: &BigRational) -> BigRational {
        let inv = self.invariants();
        let c = |v: &BigInt| BigRational::from_integer(v.clone());
        let four = BigRational::from_integer(BigInt::from(4));
        let two = BigRational::from_integer(BigInt::from(2));
        ((four * x + c(&inv.b2)) * x + two * c(&inv.b4)) * x + c(&inv.b6)
    }

    pub fn is_short(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero() && self.a3.is_zero()
    }
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{},{},{}]", self.a1, self.a2, self.a3, self.a4, self.a6)
    }
}

impl Serialize for WeierstrassCurve {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        bigint_vec::serialize(&self.ainvs(), s)
    }
}

impl<'de> Deserialize<'de> for WeierstrassCurve {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = bigint_vec::deserialize(d)?;
        Self::from_slice(&v).map_err(serde::de::Error::custom)
    }
}

/// Sign of a rational: -1, 0 or 1.
pub(crate) fn rational_sign(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_negative() {
        -1
    } else {
        1
    }
}
