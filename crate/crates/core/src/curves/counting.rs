use serde::Serialize;

use super::minimal::minimal_model;
use super::weierstrass::WeierstrassCurve;
use super::CurveError;
use crate::arith::{is_prime_u64, mod_floor_u64};

/// Largest prime accepted by [`count_points`] unless a bound is given.
pub const DEFAULT_COUNT_BOUND: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionCount {
    pub prime: u64,
    pub count: u64,
    pub trace: i64,
}

/// A model with good reduction at `ell`, minimalizing only if the given one
/// is bad there.
fn good_model(e: &WeierstrassCurve, ell: u64) -> Result<WeierstrassCurve, CurveError> {
    if mod_floor_u64(&e.discriminant(), ell) != 0 {
        return Ok(e.clone());
    }
    let m = minimal_model(e);
    if mod_floor_u64(&m.discriminant(), ell) != 0 {
        Ok(m)
    } else {
        Err(CurveError::BadReduction(ell))
    }
}

/// #E(F_ell) by enumeration, with the default bound on ell.
pub fn count_points(e: &WeierstrassCurve, ell: u64) -> Result<ReductionCount, CurveError> {
    count_points_bounded(e, ell, DEFAULT_COUNT_BOUND)
}

pub fn count_points_bounded(e: &WeierstrassCurve, ell: u64, bound: u64) -> Result<ReductionCount, CurveError> {
    if !is_prime_u64(ell) {
        return Err(CurveError::NotPrime(ell.to_string()));
    }
    if ell > bound {
        return Err(CurveError::CountBound { prime: ell, bound });
    }
    let m = good_model(e, ell)?;
    let count = if ell == 2 { count_naive(&m, 2) } else { count_odd(&m, ell) };
    Ok(ReductionCount { prime: ell, count, trace: ell as i64 + 1 - count as i64 })
}

pub fn trace_of_frobenius(e: &WeierstrassCurve, ell: u64) -> Result<i64, CurveError> {
    Ok(count_points(e, ell)?.trace)
}

/// Sum over x of (1 + chi(4x^3 + b2 x^2 + 2 b4 x + b6)), plus the point at infinity.
fn count_odd(e: &WeierstrassCurve, ell: u64) -> u64 {
    let inv = e.invariants();
    let m = ell as u128;
    let b2 = mod_floor_u64(&inv.b2, ell) as u128;
    let b4 = mod_floor_u64(&inv.b4, ell) as u128;
    let b6 = mod_floor_u64(&inv.b6, ell) as u128;
    let mut is_square = vec![false; ell as usize];
    for y in 0..ell as u128 {
        is_square[(y * y % m) as usize] = true;
    }
    let mut total: i64 = ell as i64 + 1;
    for x in 0..m {
        let v = (((4 * x + b2) % m * x + 2 * b4) % m * x + b6) % m;
        if v != 0 {
            total += if is_square[v as usize] { 1 } else { -1 };
        }
    }
    total as u64
}

fn count_naive(e: &WeierstrassCurve, ell: u64) -> u64 {
    let a: Vec<i64> = e.ainvs().iter().map(|c| mod_floor_u64(c, ell) as i64).collect();
    let m = ell as i64;
    let mut n = 1;
    for x in 0..m {
        for y in 0..m {
            let lhs = y * y + a[0] * x * y + a[2] * y;
            let rhs = x * x * x + a[1] * x * x + a[3] * x + a[4];
            if (lhs - rhs).rem_euclid(m) == 0 {
                n += 1;
            }
        }
    }
    n
}

/// Good ordinary reduction: good at p and a_p not divisible by p.
pub fn is_good_ordinary(e: &WeierstrassCurve, p: u64) -> Result<bool, CurveError> {
    let t = trace_of_frobenius(e, p)?;
    Ok(t.rem_euclid(p as i64) != 0)
}

/// p divides #E(F_p), i.e. a_p = 1 mod p.
pub fn is_anomalous(e: &WeierstrassCurve, p: u64) -> Result<bool, CurveError> {
    let c = count_points(e, p)?;
    Ok(c.count % p == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_below;

    fn curve(a: [i64; 5]) -> WeierstrassCurve {
        WeierstrassCurve::from_i64s(a).unwrap()
    }

    #[test]
    fn example_curve_over_f5() {
        let e = curve([0, 0, 0, 216, -54]);
        let c = count_points(&e, 5).unwrap();
        assert_eq!((c.count, c.trace), (9, -3));
        // reduces to y^2 = x^3 + x + 1 over F_5
        assert_eq!(count_naive(&curve([0, 0, 0, 1, 1]), 5), 9);
    }

    #[test]
    fn fast_count_agrees_with_naive() {
        for a in [[0, 0, 1, -1, 0], [1, -1, 0, -1, 1], [1, 0, 0, -2, 1], [0, 1, 1, -7, 5]] {
            let e = curve(a);
            for ell in primes_below(60) {
                if ell == 2 || mod_floor_u64(&e.discriminant(), ell) == 0 {
                    continue;
                }
                assert_eq!(count_odd(&e, ell), count_naive(&e, ell), "{a:?} at {ell}");
            }
        }
    }

    #[test]
    fn known_traces() {
        assert_eq!(trace_of_frobenius(&curve([1, -1, 0, -1, 1]), 17).unwrap(), -4);
        assert_eq!(trace_of_frobenius(&curve([1, 0, 0, -2, 1]), 11).unwrap(), -5);
        assert_eq!(trace_of_frobenius(&curve([0, 0, 1, -1, 0]), 11).unwrap(), -5);
    }

    #[test]
    fn bad_prime_rejected() {
        assert_eq!(count_points(&curve([0, 0, 1, -1, 0]), 37), Err(CurveError::BadReduction(37)));
        assert!(matches!(count_points_bounded(&curve([0, 0, 1, -1, 0]), 101, 100), Err(CurveError::CountBound { .. })));
    }

    #[test]
    fn supersingular_is_not_ordinary() {
        // y^2 = x^3 - x is supersingular at primes 3 mod 4
        let e = curve([0, 0, 0, -1, 0]);
        assert!(!is_good_ordinary(&e, 7).unwrap());
        assert!(is_good_ordinary(&e, 5).unwrap());
    }

    #[test]
    fn ordinary_and_anomalous_flags() {
        let e = curve([1, -1, 0, -1, 1]);
        assert!(is_good_ordinary(&e, 17).unwrap());
        assert!(!is_anomalous(&e, 17).unwrap());
        // 37a1 has a_7 = -1, and a_5 = -2 so #E(F_5) = 8
        let f = curve([0, 0, 1, -1, 0]);
        assert_eq!(trace_of_frobenius(&f, 7).unwrap(), -1);
    }
}
