use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::zmod::Zmod;
use super::SeriesError;
use crate::padic::{PadicError, PadicNumber};

/// A truncated element c_0 + c_1 T + ... + c_D T^D of Z_p[[T]], coefficients
/// known modulo p^N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariateSeries {
    pub(crate) ring: Zmod,
    pub(crate) cap: usize,
    pub(crate) coeffs: Vec<BigUint>,
}

impl UnivariateSeries {
    pub fn zero(prime: u64, precision: u32, cap: usize) -> Result<Self, SeriesError> {
        crate::padic::PadicNumber::zero(prime, precision)?;
        Ok(Self { ring: Zmod::new(prime, precision), cap, coeffs: vec![BigUint::zero(); cap + 1] })
    }

    /// Builds a series from integer coefficients c_0, c_1, ...; entries past
    /// the cap are dropped, missing ones are zero.
    pub fn from_integers(prime: u64, precision: u32, cap: usize, coeffs: &[BigInt]) -> Result<Self, SeriesError> {
        let mut s = Self::zero(prime, precision, cap)?;
        for (i, c) in coeffs.iter().enumerate().take(cap + 1) {
            s.coeffs[i] = s.ring.reduce_int(c);
        }
        Ok(s)
    }

    pub fn from_i64s(prime: u64, precision: u32, cap: usize, coeffs: &[i64]) -> Result<Self, SeriesError> {
        let big: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        Self::from_integers(prime, precision, cap, &big)
    }

    pub fn from_padics(cap: usize, coeffs: &[PadicNumber]) -> Result<Self, SeriesError> {
        let first = coeffs.first().ok_or_else(|| SeriesError::Invalid("no coefficients".into()))?;
        let prime = first.prime();
        let mut precision = first.precision();
        for c in coeffs {
            if c.prime() != prime {
                return Err(PadicError::PrimeMismatch(prime, c.prime()).into());
            }
            precision = precision.min(c.precision());
        }
        let mut s = Self::zero(prime, precision, cap)?;
        for (i, c) in coeffs.iter().enumerate().take(cap + 1) {
            s.coeffs[i] = s.ring.reduce(c.residue().clone());
        }
        Ok(s)
    }

    pub(crate) fn from_raw(ring: Zmod, cap: usize, coeffs: Vec<BigUint>) -> Self {
        debug_assert_eq!(coeffs.len(), cap + 1);
        Self { ring, cap, coeffs }
    }

    pub fn prime(&self) -> u64 {
        self.ring.prime
    }

    pub fn precision(&self) -> u32 {
        self.ring.precision
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Coefficient of T^i (zero beyond the cap).
    pub fn coeff(&self, i: usize) -> PadicNumber {
        let r = self.coeffs.get(i).cloned().unwrap_or_default();
        PadicNumber::from_parts_unchecked(self.ring.prime, self.ring.precision, r)
    }

    pub fn coefficients(&self) -> Vec<PadicNumber> {
        (0..=self.cap).map(|i| self.coeff(i)).collect()
    }

    pub fn residues(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_compatible(&self, other: &Self) -> Result<(Zmod, usize), SeriesError> {
        if self.ring.prime != other.ring.prime {
            return Err(PadicError::PrimeMismatch(self.ring.prime, other.ring.prime).into());
        }
        let n = self.ring.precision.min(other.ring.precision);
        Ok((Zmod::new(self.ring.prime, n), self.cap.min(other.cap)))
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        let (ring, cap) = self.check_compatible(other)?;
        let coeffs = (0..=cap).map(|i| ring.reduce(&self.coeffs[i] + &other.coeffs[i])).collect();
        Ok(Self { ring, cap, coeffs })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        let (ring, cap) = self.check_compatible(other)?;
        let mut coeffs = vec![BigUint::zero(); cap + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(cap + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(cap + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = ring.reduce(&coeffs[i + j] + a * b);
            }
        }
        Ok(Self { ring, cap, coeffs })
    }

    /// Human-readable polynomial using balanced residues, e.g. `3 - Y + 2*Y^2`.
    pub fn to_poly_string(&self, var: &str) -> String {
        let terms: Vec<(BigInt, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let mono = match i {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{i}"),
                };
                (self.ring.signed(c), mono)
            })
            .collect();
        render_terms(&terms)
    }
}

pub(crate) fn render_terms(terms: &[(BigInt, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (c, mono)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            let _ = write!(out, "{mag}");
        } else if mag.is_one() {
            out.push_str(mono);
        } else {
            let _ = write!(out, "{mag}*{mono}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_truncates() {
        // (1 + T)^2 = 1 + 2T + T^2, cap 1 keeps 1 + 2T
        let s = UnivariateSeries::from_i64s(5, 4, 1, &[1, 1]).unwrap();
        let sq = s.mul(&s).unwrap();
        assert_eq!(sq.to_poly_string("T"), "1 + 2*T");
    }

    #[test]
    fn balanced_display() {
        let s = UnivariateSeries::from_i64s(3, 5, 3, &[0, -1, 0, 4]).unwrap();
        assert_eq!(s.to_poly_string("Y"), "-Y + 4*Y^3");
        assert_eq!(UnivariateSeries::zero(3, 5, 3).unwrap().to_poly_string("Y"), "0");
    }
}
