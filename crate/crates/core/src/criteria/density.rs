use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use super::CriteriaError;
use crate::arith::{factor, to_bigint};
use crate::curves::{conductor, mod2_image, Mod2Image};
use crate::ingest::CurveRecord;
use crate::quad::ImagQuadField;

fn ratio(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn two_pow(k: u32) -> BigRational {
    BigRational::from_integer(BigInt::one() << k)
}

/// Dirichlet density of S given the 2-division image, the number k of
/// primes dividing N, and whether K0 = Q(i).
pub fn kriz_li_density_formula(image: Mod2Image, k: u32, gaussian: bool) -> Result<BigRational, CriteriaError> {
    match image {
        Mod2Image::Z3 => {
            let e = if gaussian { k + 1 } else { k + 2 };
            Ok(ratio(2, 3) / two_pow(e))
        }
        Mod2Image::S3 => Ok(ratio(1, 3) / two_pow(k + 1)),
        other => Err(CriteriaError::Unsupported(format!("2-division image {other} (need Z/3 or S3)"))),
    }
}

/// As [`kriz_li_density_formula`], reading the image and k off the curve.
pub fn kriz_li_density(record: &CurveRecord, k0: &ImagQuadField) -> Result<BigRational, CriteriaError> {
    let e = record.minimal_curve();
    let k = factor(&to_bigint(&conductor(&e))).len() as u32;
    kriz_li_density_formula(mod2_image(&e), k, k0.is_gaussian())
}

/// Lower bound for the density of discriminants from a semistable curve of
/// conductor N with a rational 3-isogeny.
pub fn isogeny3_density(n: &BigUint, has_3_isogeny: bool) -> Result<BigRational, CriteriaError> {
    if !has_3_isogeny {
        return Err(CriteriaError::Unsupported("no rational 3-isogeny".into()));
    }
    if *n <= BigUint::one() {
        return Err(CriteriaError::Invalid(format!("N = {n} is not a conductor")));
    }
    let primes = factor(&to_bigint(n));
    if primes.iter().any(|(_, e)| *e > 1) {
        return Err(CriteriaError::Unsupported(format!("N = {n} is not squarefree, so the curve is not semistable")));
    }
    let k = primes.len() as u32;
    let two = BigUint::from(2u32);
    let three = BigUint::from(3u32);
    let r = if primes.iter().any(|(q, _)| *q == two) { 2 } else { 0 };
    let delta = if primes.iter().any(|(q, _)| *q == three) { 0 } else { 1 };
    let mut out = ratio(1, 3) / two_pow(r) / two_pow(k - delta);
    for (q, _) in &primes {
        if *q == three {
            continue;
        }
        let ql = if *q == two { BigUint::from(4u32) } else { q.clone() };
        out *= BigRational::new(to_bigint(&ql), to_bigint(&(q + 1u32)));
    }
    Ok(out)
}
