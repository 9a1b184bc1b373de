use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::Zero;

/// Arithmetic in Z / p^N Z on raw residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Zmod {
    pub prime: u64,
    pub precision: u32,
    pub modulus: BigUint,
}

impl Zmod {
    pub fn new(prime: u64, precision: u32) -> Self {
        Self { prime, precision, modulus: BigUint::from(prime).pow(precision) }
    }

    pub fn reduce(&self, x: BigUint) -> BigUint {
        if x < self.modulus {
            x
        } else {
            x % &self.modulus
        }
    }

    pub fn reduce_int(&self, x: &BigInt) -> BigUint {
        let m = BigInt::from_biguint(Sign::Plus, self.modulus.clone());
        x.mod_floor(&m).to_biguint().expect("nonnegative")
    }

    pub fn neg(&self, a: &BigUint) -> BigUint {
        if a.is_zero() {
            BigUint::zero()
        } else {
            &self.modulus - a
        }
    }

    pub fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        if a.is_zero() || b.is_zero() {
            return BigUint::zero();
        }
        (a * b) % &self.modulus
    }

    pub fn inv(&self, a: &BigUint) -> Option<BigUint> {
        a.modinv(&self.modulus)
    }

    /// Balanced representative in (-m/2, m/2].
    pub fn signed(&self, a: &BigUint) -> BigInt {
        let v = BigInt::from_biguint(Sign::Plus, a.clone());
        if a * 2u32 > self.modulus {
            v - BigInt::from_biguint(Sign::Plus, self.modulus.clone())
        } else {
            v
        }
    }
}
