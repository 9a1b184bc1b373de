//! Imaginary quadratic fields Q(sqrt(d)) keyed by squarefree d < 0.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::squarefree_part_i64;
use crate::padic::kronecker;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadError {
    #[error("d = {0} does not define an imaginary quadratic field")]
    NotImaginary(i64),
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ImagQuadField {
    pub d: i64,
    pub disc: i64,
    pub height: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

/// The field Q(sqrt(d)); square factors of d are removed first.
pub fn make_field(d: i64) -> Result<ImagQuadField, QuadError> {
    if d >= 0 {
        return Err(QuadError::NotImaginary(d));
    }
    let d = squarefree_part_i64(d);
    let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d };
    Ok(ImagQuadField { d, disc, height: d.unsigned_abs() })
}

impl ImagQuadField {
    /// Inverse of the d -> disc map.
    pub fn from_discriminant(disc: i64) -> Result<Self, QuadError> {
        if disc >= 0 {
            return Err(QuadError::NotImaginary(disc));
        }
        let d = if disc.rem_euclid(4) == 0 { disc / 4 } else { disc };
        let k = make_field(d)?;
        if k.disc != disc {
            return Err(QuadError::NotFundamental(disc));
        }
        Ok(k)
    }

    pub fn is_gaussian(&self) -> bool {
        self.d == -1
    }

    pub fn splitting(&self, ell: u64) -> Splitting {
        splitting(self, ell)
    }
}

/// Decomposition of the prime ell, read off the Kronecker symbol (disc / ell).
pub fn splitting(k: &ImagQuadField, ell: u64) -> Splitting {
    match kronecker(k.disc, ell) {
        1 => Splitting::Split,
        -1 => Splitting::Inert,
        _ => Splitting::Ramified,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_below;

    #[test]
    fn discriminants() {
        assert_eq!(make_field(-7).unwrap().disc, -7);
        assert_eq!(make_field(-2).unwrap().disc, -8);
        let k = make_field(-12).unwrap();
        assert_eq!((k.d, k.disc, k.height), (-3, -3, 3));
        assert_eq!(make_field(-1).unwrap().disc, -4);
        assert!(make_field(0).is_err());
        assert!(make_field(5).is_err());
    }

    #[test]
    fn discriminant_round_trip() {
        for d in [-1, -2, -3, -5, -6, -7, -11, -15, -19, -30] {
            let k = make_field(d).unwrap();
            assert_eq!(ImagQuadField::from_discriminant(k.disc).unwrap(), k);
        }
        assert_eq!(ImagQuadField::from_discriminant(-12), Err(QuadError::NotFundamental(-12)));
    }

    #[test]
    fn splitting_in_q_sqrt_minus_7() {
        let k = make_field(-7).unwrap();
        assert_eq!(k.splitting(2), Splitting::Split);
        assert_eq!(k.splitting(37), Splitting::Split);
        assert_eq!(k.splitting(7), Splitting::Ramified);
        assert_eq!(k.splitting(3), Splitting::Inert);
    }

    #[test]
    fn periodic_in_four_ell() {
        // the symbol depends only on disc mod 4 ell
        for ell in primes_below(60) {
            for d in [-1i64, -2, -3, -5, -7, -11, -13, -14] {
                let k = make_field(d).unwrap();
                let shifted = k.disc - 4 * ell as i64 * 5;
                assert_eq!(kronecker(k.disc, ell), kronecker(shifted, ell), "d = {d}, ell = {ell}");
            }
        }
    }

    #[test]
    fn three_splits_when_d_is_one_mod_three() {
        for d in [-2i64, -5, -11, -14, -17, -23, -26] {
            assert_eq!(d.rem_euclid(3), 1);
            assert_eq!(make_field(d).unwrap().splitting(3), Splitting::Split, "d = {d}");
        }
    }
}
