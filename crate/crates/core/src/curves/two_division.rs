use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::polymod::count_roots;
use super::weierstrass::WeierstrassCurve;
use super::CurveError;
use crate::arith::{is_perfect_square, is_prime_u64, mod_floor_u64};

/// Gal(Q(E[2])/Q) as a permutation group on the three 2-torsion points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mod2Image {
    #[serde(rename = "trivial")]
    Trivial,
    #[serde(rename = "Z/2")]
    Z2,
    #[serde(rename = "Z/3")]
    Z3,
    #[serde(rename = "S3")]
    S3,
}

impl std::fmt::Display for Mod2Image {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mod2Image::Trivial => "trivial",
            Mod2Image::Z2 => "Z/2",
            Mod2Image::Z3 => "Z/3",
            Mod2Image::S3 => "S3",
        })
    }
}

impl std::str::FromStr for Mod2Image {
    type Err = CurveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "trivial" | "1" => Ok(Mod2Image::Trivial),
            "Z/2" | "C2" => Ok(Mod2Image::Z2),
            "Z/3" | "C3" | "A3" => Ok(Mod2Image::Z3),
            "S3" => Ok(Mod2Image::S3),
            other => Err(CurveError::Parse(format!("unknown mod-2 image {other:?}"))),
        }
    }
}

/// Coefficients (constant first) of the monic cubic y^3 + b2 y^2 + 8 b4 y + 16 b6,
/// whose roots are 4x for the roots x of the 2-division cubic.
fn monic_cubic(e: &WeierstrassCurve) -> [BigInt; 4] {
    let inv = e.invariants();
    [inv.b6 * 16u32, inv.b4 * 8u32, inv.b2, BigInt::one()]
}

fn eval(c: &[BigInt; 4], y: &BigInt) -> BigInt {
    ((&c[3] * y + &c[2]) * y + &c[1]) * y + &c[0]
}

/// First integer in [lo, hi] where the monotone function `h` vanishes.
fn search(c: &[BigInt; 4], lo: BigInt, hi: BigInt, increasing: bool) -> Option<BigInt> {
    let (mut lo, mut hi) = (lo, hi);
    while lo <= hi {
        let mid: BigInt = (&lo + &hi) >> 1;
        let v = eval(c, &mid);
        if v.is_zero() {
            return Some(mid);
        }
        if (v.is_negative()) == increasing {
            lo = mid + 1u32;
        } else {
            hi = mid - 1u32;
        }
    }
    None
}

/// Integer roots of a monic integer cubic, found on its monotone pieces.
fn integer_roots(c: &[BigInt; 4]) -> Vec<BigInt> {
    let bound = c[..3].iter().map(|x| x.abs()).max().unwrap_or_default() + 1u32;
    // critical points of y^3 + b y^2 + c y + d are (-b +- sqrt(b^2 - 3c)) / 3
    let disc = &c[2] * &c[2] - &c[1] * 3u32;
    let mut roots = Vec::new();
    if disc.is_negative() {
        roots.extend(search(c, -bound.clone(), bound, true));
    } else {
        let s = disc.sqrt();
        let r1: BigInt = (-&c[2] - &s) / 3u32;
        let r2: BigInt = (-&c[2] + &s) / 3u32;
        // each true critical point lies within 2 of its estimate
        let mut y = &r1 - 1u32;
        while y <= &r2 + 1u32 {
            if y >= &r1 + 2u32 && y <= &r2 - 2u32 {
                y = &r2 - 1u32;
                continue;
            }
            if eval(c, &y).is_zero() {
                roots.push(y.clone());
            }
            y += 1;
        }
        roots.extend(search(c, -bound.clone(), &r1 - 2u32, true));
        roots.extend(search(c, &r1 + 2u32, &r2 - 2u32, false));
        roots.extend(search(c, &r2 + 2u32, bound, true));
    }
    roots.sort();
    roots.dedup();
    roots
}

/// Number of rational roots of the 2-division cubic.
pub fn rational_two_torsion_count(e: &WeierstrassCurve) -> usize {
    integer_roots(&monic_cubic(e)).len()
}

/// Galois group of Q(E[2])/Q.
pub fn mod2_image(e: &WeierstrassCurve) -> Mod2Image {
    match rational_two_torsion_count(e) {
        0 => {
            if is_perfect_square(&e.discriminant()) {
                Mod2Image::Z3
            } else {
                Mod2Image::S3
            }
        }
        1 => Mod2Image::Z2,
        _ => Mod2Image::Trivial,
    }
}

/// Order of Frobenius at ell in Gal(Q(E[2])/Q), from the number of roots of
/// the 2-division cubic mod ell. Elements of S3 have order 1, 2 or 3.
pub fn two_division_frobenius_order(e: &WeierstrassCurve, ell: u64) -> Result<u8, CurveError> {
    if !is_prime_u64(ell) {
        return Err(CurveError::NotPrime(ell.to_string()));
    }
    if ell == 2 || mod_floor_u64(&e.discriminant(), ell) == 0 {
        return Err(CurveError::Ramified(ell));
    }
    let inv = e.invariants();
    let cubic = [inv.b6, inv.b4 * 2u32, inv.b2, BigInt::from(4)];
    let n = count_roots(&cubic, &num_bigint::BigUint::from(ell));
    let order = match n.to_u32_digits().first().copied().unwrap_or(0) {
        3 => 1,
        1 => 2,
        0 => 3,
        other => unreachable!("separable cubic with {other} roots"),
    };
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_below;

    fn curve(a: [i64; 5]) -> WeierstrassCurve {
        WeierstrassCurve::from_i64s(a).unwrap()
    }

    fn brute_roots(e: &WeierstrassCurve, ell: u64) -> usize {
        let inv = e.invariants();
        let b: Vec<i128> = [inv.b2, inv.b4, inv.b6].iter().map(|c| mod_floor_u64(c, ell) as i128).collect();
        (0..ell as i128)
            .filter(|&x| (4 * x * x * x + b[0] * x * x + 2 * b[1] * x + b[2]).rem_euclid(ell as i128) == 0)
            .count()
    }

    #[test]
    fn fifty_three_has_order_three() {
        let e = curve([0, 0, 1, -1, 0]);
        assert_eq!(two_division_frobenius_order(&e, 53).unwrap(), 3);
        assert_eq!(two_division_frobenius_order(&e, 37), Err(CurveError::Ramified(37)));
    }

    #[test]
    fn order_matches_root_count() {
        let e = curve([0, 0, 1, -1, 0]);
        for ell in primes_below(400).into_iter().filter(|&l| l != 2 && l != 37) {
            let expect = match brute_roots(&e, ell) {
                3 => 1,
                1 => 2,
                _ => 3,
            };
            assert_eq!(two_division_frobenius_order(&e, ell).unwrap(), expect);
        }
    }

    #[test]
    fn images() {
        assert_eq!(mod2_image(&curve([0, 0, 1, -1, 0])), Mod2Image::S3);
        assert_eq!(mod2_image(&curve([0, 0, 0, -1, 0])), Mod2Image::Trivial);
        // y^2 = x^3 + x has the single rational root x = 0
        assert_eq!(mod2_image(&curve([0, 0, 0, 1, 0])), Mod2Image::Z2);
        // y^2 = x^3 - 3x + 1: irreducible with square discriminant 2^4 3^4
        assert_eq!(mod2_image(&curve([0, 0, 0, -3, 1])), Mod2Image::Z3);
    }

    #[test]
    fn integer_roots_of_split_cubic() {
        // (y - 7)(y + 3)(y - 1000)
        let c = [BigInt::from(21000), BigInt::from(3979), BigInt::from(-1004), BigInt::one()];
        let got = integer_roots(&c);
        assert_eq!(got, vec![BigInt::from(-3), BigInt::from(7), BigInt::from(1000)]);
        // (y - 2)^2 (y + 1)
        let d = [BigInt::from(4), BigInt::zero(), BigInt::from(-3), BigInt::one()];
        assert_eq!(integer_roots(&d), vec![BigInt::from(-1), BigInt::from(2)]);
    }

    #[test]
    fn density_of_order_three_is_near_a_third() {
        let e = curve([0, 0, 1, -1, 0]);
        let ps: Vec<u64> = primes_below(10_000).into_iter().filter(|&l| l != 2 && l != 37).collect();
        let threes = ps.iter().filter(|&&l| two_division_frobenius_order(&e, l).unwrap() == 3).count();
        let frac = threes as f64 / ps.len() as f64;
        assert!((frac - 1.0 / 3.0).abs() < 0.03, "{frac}");
    }
}
