use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::PadicError;

/// Default number of p-adic digits carried by scalars and series.
pub const DEFAULT_PRECISION: u32 = 20;

/// Valuation of a capped-precision p-adic integer.
///
/// A zero residue is only known to be divisible by `p^N`, so it reports
/// `AtLeast(N)` rather than a finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(u32),
    AtLeast(u32),
}

impl Valuation {
    pub fn is_unit(self) -> bool {
        self == Valuation::Finite(0)
    }

    /// The finite value, if the residue is nonzero.
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::AtLeast(_) => None,
        }
    }

    /// Lower bound usable in comparisons (`AtLeast(N)` counts as N).
    pub fn lower_bound(self) -> u32 {
        match self {
            Valuation::Finite(v) | Valuation::AtLeast(v) => v,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

/// An element of Z_p known modulo p^N.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicNumber {
    prime: u64,
    precision: u32,
    residue: BigUint,
}

pub(crate) fn check_prime(prime: u64) -> Result<(), PadicError> {
    if prime < 3 || !crate::arith::is_prime_u64(prime) {
        return Err(PadicError::NotOddPrime(prime));
    }
    Ok(())
}

impl PadicNumber {
    pub fn from_residue(prime: u64, precision: u32, residue: BigUint) -> Result<Self, PadicError> {
        check_prime(prime)?;
        if precision == 0 {
            return Err(PadicError::ZeroPrecision);
        }
        let modulus = Self::modulus_for(prime, precision);
        Ok(Self { prime, precision, residue: residue % modulus })
    }

    pub fn from_integer(prime: u64, precision: u32, value: &BigInt) -> Result<Self, PadicError> {
        check_prime(prime)?;
        if precision == 0 {
            return Err(PadicError::ZeroPrecision);
        }
        let modulus = BigInt::from_biguint(Sign::Plus, Self::modulus_for(prime, precision));
        let r = value.mod_floor(&modulus);
        Ok(Self { prime, precision, residue: r.to_biguint().expect("nonnegative") })
    }

    pub fn from_i64(prime: u64, precision: u32, value: i64) -> Result<Self, PadicError> {
        Self::from_integer(prime, precision, &BigInt::from(value))
    }

    pub fn zero(prime: u64, precision: u32) -> Result<Self, PadicError> {
        Self::from_i64(prime, precision, 0)
    }

    pub fn one(prime: u64, precision: u32) -> Result<Self, PadicError> {
        Self::from_i64(prime, precision, 1)
    }

    pub(crate) fn from_parts_unchecked(prime: u64, precision: u32, residue: BigUint) -> Self {
        Self { prime, precision, residue }
    }

    pub fn modulus_for(prime: u64, precision: u32) -> BigUint {
        BigUint::from(prime).pow(precision)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    pub fn modulus(&self) -> BigUint {
        Self::modulus_for(self.prime, self.precision)
    }

    /// Representative in (-p^N/2, p^N/2].
    pub fn signed_residue(&self) -> BigInt {
        let m = self.modulus();
        let r = BigInt::from_biguint(Sign::Plus, self.residue.clone());
        if &self.residue * 2u32 > m {
            r - BigInt::from_biguint(Sign::Plus, m)
        } else {
            r
        }
    }

    /// Residue class modulo p.
    pub fn reduce_mod_p(&self) -> u64 {
        let r = &self.residue % self.prime;
        r.iter_u64_digits().next().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn valuation(&self) -> Valuation {
        if self.residue.is_zero() {
            return Valuation::AtLeast(self.precision);
        }
        let mut v = 0;
        let mut r = self.residue.clone();
        loop {
            let (q, rem) = r.div_rem(&BigUint::from(self.prime));
            if !rem.is_zero() {
                return Valuation::Finite(v);
            }
            r = q;
            v += 1;
        }
    }

    pub fn is_unit(&self) -> bool {
        self.valuation().is_unit()
    }

    /// Drops to a lower precision (no-op when `precision >= self.precision`).
    pub fn truncate(&self, precision: u32) -> Self {
        if precision >= self.precision || precision == 0 {
            return self.clone();
        }
        let m = Self::modulus_for(self.prime, precision);
        Self { prime: self.prime, precision, residue: &self.residue % m }
    }

    fn align(&self, other: &Self) -> Result<(u32, BigUint), PadicError> {
        if self.prime != other.prime {
            return Err(PadicError::PrimeMismatch(self.prime, other.prime));
        }
        let n = self.precision.min(other.precision);
        Ok((n, Self::modulus_for(self.prime, n)))
    }

    pub fn add(&self, other: &Self) -> Result<Self, PadicError> {
        let (n, m) = self.align(other)?;
        Ok(Self { prime: self.prime, precision: n, residue: (&self.residue + &other.residue) % m })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PadicError> {
        let (n, m) = self.align(other)?;
        let a = &self.residue % &m;
        let b = &other.residue % &m;
        let residue = if a >= b { a - b } else { &m - (b - a) };
        Ok(Self { prime: self.prime, precision: n, residue })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PadicError> {
        let (n, m) = self.align(other)?;
        Ok(Self { prime: self.prime, precision: n, residue: (&self.residue * &other.residue) % m })
    }

    pub fn neg(&self) -> Self {
        if self.residue.is_zero() {
            return self.clone();
        }
        Self { prime: self.prime, precision: self.precision, residue: self.modulus() - &self.residue }
    }

    /// Multiplicative inverse; fails for non-units.
    pub fn invert(&self) -> Result<Self, PadicError> {
        if !self.is_unit() {
            return Err(PadicError::NotInvertible { prime: self.prime, precision: self.precision });
        }
        let m = self.modulus();
        let inv = self
            .residue
            .modinv(&m)
            .ok_or(PadicError::NotInvertible { prime: self.prime, precision: self.precision })?;
        Ok(Self { prime: self.prime, precision: self.precision, residue: inv })
    }

    pub fn is_one(&self) -> bool {
        self.residue.is_one()
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({}^{})", self.residue, self.prime, self.precision)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pn(p: u64, n: u32, v: i64) -> PadicNumber {
        PadicNumber::from_i64(p, n, v).unwrap()
    }

    /// Extended Euclid oracle, independent of `BigUint::modinv`.
    fn egcd_inverse(a: i128, m: i128) -> i128 {
        let (mut r0, mut r1, mut s0, mut s1) = (a, m, 1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        assert_eq!(r0, 1);
        s0.rem_euclid(m)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(pn(3, 4, 5).mul(&pn(3, 4, 17)).unwrap(), pn(3, 4, 4));
        let x = pn(7, 5, 1234);
        assert_eq!(x.add(&pn(7, 5, 0)).unwrap(), x);
        assert_eq!(pn(5, 3, 7).mul(&pn(5, 3, 18)).unwrap(), pn(5, 3, 1));
        assert_eq!(egcd_inverse(7, 125), 18);
        assert_eq!(pn(5, 3, 7).invert().unwrap(), pn(5, 3, 18));
    }

    #[test]
    fn precision_is_min_of_operands() {
        let s = pn(3, 4, 80).add(&pn(3, 2, 1)).unwrap();
        assert_eq!(s.precision(), 2);
        assert_eq!(s.residue(), &BigUint::from(0u32));
    }

    #[test]
    fn mismatched_primes() {
        assert!(matches!(pn(3, 4, 1).add(&pn(5, 4, 1)), Err(PadicError::PrimeMismatch(3, 5))));
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(pn(3, 2, 1).invert().unwrap(), pn(3, 2, 1));
        assert_eq!(pn(3, 2, 2).invert().unwrap(), pn(3, 2, 5));
        let brute = (1..17u64).find(|k| 4 * k % 17 == 1).unwrap();
        assert_eq!(brute, 13);
        assert_eq!(pn(17, 1, 4).invert().unwrap(), pn(17, 1, 13));
        assert!(matches!(pn(3, 4, 9).invert(), Err(PadicError::NotInvertible { .. })));
    }

    #[test]
    fn valuations() {
        assert_eq!(pn(3, 4, 9).valuation(), Valuation::Finite(2));
        assert_eq!(pn(3, 4, 2).valuation(), Valuation::Finite(0));
        assert_eq!(pn(3, 4, 0).valuation(), Valuation::AtLeast(4));
        assert_eq!(pn(3, 4, 81).valuation(), Valuation::AtLeast(4));
    }

    #[test]
    fn wide_residues() {
        // 37^20 does not fit in 64 bits.
        let m = PadicNumber::modulus_for(37, 20);
        assert!(m.bits() > 64);
        let x = pn(37, 20, -1);
        assert_eq!(x.residue(), &(&m - 1u32));
        assert_eq!(x.signed_residue(), BigInt::from(-1));
        assert_eq!(x.mul(&x).unwrap(), pn(37, 20, 1));
    }

    #[test]
    fn rejects_even_prime() {
        assert!(PadicNumber::from_i64(2, 5, 1).is_err());
        assert!(PadicNumber::from_i64(9, 5, 1).is_err());
    }
}
