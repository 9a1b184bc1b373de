use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::weierstrass::WeierstrassCurve;
use super::CurveError;
use crate::arith::{factor, valuation};

/// Coordinate change x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub u: BigInt,
    pub r: BigInt,
    pub s: BigInt,
    pub t: BigInt,
}

impl Isomorphism {
    /// Image under the change of variables of an x-coordinate on the source model.
    pub fn map_x(&self, x: &num_rational::BigRational) -> num_rational::BigRational {
        let r = num_rational::BigRational::from_integer(self.r.clone());
        let u2 = num_rational::BigRational::from_integer(&self.u * &self.u);
        (x - r) / u2
    }
}

fn exact_div(n: BigInt, d: i64) -> Result<BigInt, CurveError> {
    let (q, r) = n.div_rem(&BigInt::from(d));
    if r.is_zero() {
        Ok(q)
    } else {
        Err(CurveError::NonIntegral)
    }
}

/// Recovers the (u, r, s, t) with `to = from.change_coordinates(u, r, s, t)`,
/// taking u > 0. None when the models are not isomorphic over Q via an
/// integral-ratio scaling.
pub fn isomorphism(from: &WeierstrassCurve, to: &WeierstrassCurve) -> Option<Isomorphism> {
    let fi = from.invariants();
    let ti = to.invariants();
    let (q, r) = fi.discriminant.div_rem(&ti.discriminant);
    if !r.is_zero() || q.is_negative() {
        return None;
    }
    let u = q.nth_root(12);
    if u.pow(12) != q || fi.c4 != &ti.c4 * u.pow(4) || fi.c6 != &ti.c6 * u.pow(6) {
        return None;
    }
    let s2 = &u * &to.a1 - &from.a1;
    if s2.is_odd() {
        return None;
    }
    let s = s2 / 2u32;
    let r3 = &u * &u * &to.a2 - &from.a2 + &s * &from.a1 + &s * &s;
    let t2 = {
        if !(&r3 % 3u32).is_zero() {
            return None;
        }
        let r = &r3 / 3u32;
        &u * &u * &u * &to.a3 - &from.a3 - &r * &from.a1
    };
    if t2.is_odd() {
        return None;
    }
    let iso = Isomorphism { u, r: r3 / 3u32, s, t: t2 / 2u32 };
    match from.change_coordinates(&iso.u, &iso.r, &iso.s, &iso.t) {
        Ok(ref e) if e == to => Some(iso),
        _ => None,
    }
}

/// Exponent of p in the scaling u of the minimal model.
fn local_scaling(p: &BigUint, disc: &BigInt, c4: &BigInt, c6: &BigInt) -> u32 {
    let vd = valuation(disc, p).unwrap_or(0);
    let mut d = vd / 12u32;
    if let Some(v4) = valuation(c4, p) {
        d = d.min(v4 / 4u32);
    }
    if let Some(v6) = valuation(c6, p) {
        d = d.min(v6 / 6u32);
    }
    if d == 0 {
        return 0;
    }
    let pb = BigInt::from_biguint(Sign::Plus, p.clone());
    if *p == BigUint::from(3u32) {
        if valuation(c6, p) == Some(6 * d + 2u32) {
            d -= 1;
        }
    } else if *p == BigUint::from(2u32) {
        let a = c4 / pb.pow(4 * d);
        let b = c6 / pb.pow(6 * d);
        let b4 = b.mod_floor(&BigInt::from(4));
        let b32 = b.mod_floor(&BigInt::from(32));
        let a16 = a.mod_floor(&BigInt::from(16));
        let ok = b4 == BigInt::from(3) || (a16.is_zero() && (b32.is_zero() || b32 == BigInt::from(8)));
        if !ok {
            d -= 1;
        }
    }
    d
}

/// Global minimal model in reduced form (a1, a3 in {0, 1}, a2 in {-1, 0, 1}).
pub fn minimal_model(e: &WeierstrassCurve) -> WeierstrassCurve {
    minimal_model_with_map(e).0
}

/// Minimal model together with the change of variables from `e` to it.
pub fn minimal_model_with_map(e: &WeierstrassCurve) -> (WeierstrassCurve, Isomorphism) {
    let inv = e.invariants();
    let (c4, c6, disc) = (&inv.c4, &inv.c6, &inv.discriminant);
    let g = if c4.is_zero() {
        c6.clone()
    } else if c6.is_zero() {
        c4.clone()
    } else {
        c4.gcd(c6)
    };
    let mut u = BigInt::one();
    for (p, _) in factor(&g) {
        let d = local_scaling(&p, disc, c4, c6);
        if d > 0 {
            u *= BigInt::from_biguint(Sign::Plus, p).pow(d);
        }
    }
    let c4m = c4 / u.pow(4);
    let c6m = c6 / u.pow(6);
    let reduced = from_c4_c6(&c4m, &c6m).expect("Kraus conditions hold after scaling");
    let iso = isomorphism(e, &reduced).expect("minimal model is isomorphic to the input");
    (reduced, iso)
}

/// The reduced integral model with the given c-invariants.
pub fn from_c4_c6(c4: &BigInt, c6: &BigInt) -> Result<WeierstrassCurve, CurveError> {
    let mut b2 = (-c6).mod_floor(&BigInt::from(12));
    if b2 > BigInt::from(6) {
        b2 -= 12;
    }
    let b4 = exact_div(&b2 * &b2 - c4, 24)?;
    let b6 = exact_div(-(&b2 * &b2 * &b2) + &b2 * &b4 * 36u32 - c6, 216)?;
    let a1 = b2.mod_floor(&BigInt::from(2));
    let a3 = b6.mod_floor(&BigInt::from(2));
    let a2 = exact_div(&b2 - &a1, 4)?;
    let a4 = exact_div(&b4 - &a1 * &a3, 2)?;
    let a6 = exact_div(&b6 - &a3, 4)?;
    WeierstrassCurve::new([a1, a2, a3, a4, a6])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(a: [i64; 5]) -> WeierstrassCurve {
        WeierstrassCurve::from_i64s(a).unwrap()
    }

    #[test]
    fn minimal_curves_are_fixed() {
        for a in [[0, 0, 1, -1, 0], [1, -1, 0, -1, 1], [1, 0, 0, -2, 1], [0, 0, 0, -1, 0]] {
            assert_eq!(minimal_model(&curve(a)), curve(a));
        }
    }

    #[test]
    fn scaled_model_comes_back() {
        // 37a1 pushed through u = 6 and a translation
        let e = curve([0, 0, 1, -1, 0]);
        let big = e.change_coordinates(&BigInt::one(), &BigInt::from(4), &BigInt::from(-1), &BigInt::from(3)).unwrap();
        let short = big.short_model();
        assert_eq!(minimal_model(&short), e);
    }

    #[test]
    fn example_curve_is_good_at_three() {
        let e = curve([0, 0, 0, 216, -54]);
        let (m, iso) = minimal_model_with_map(&e);
        let q = e.discriminant() / m.discriminant();
        assert_eq!(q, BigInt::from(3).pow(12));
        assert_eq!(iso.u, BigInt::from(3));
        assert_eq!(valuation(&m.discriminant(), &BigUint::from(3u32)), Some(0));
        assert_eq!(m.discriminant(), BigInt::from(-(2i64.pow(6)) * 19));
    }

    #[test]
    fn isomorphism_recovers_change() {
        let e = curve([1, -1, 0, -1, 1]);
        let (u, r, s, t) = (BigInt::one(), BigInt::from(2), BigInt::from(1), BigInt::from(-3));
        let f = e.change_coordinates(&u, &r, &s, &t).unwrap();
        let iso = isomorphism(&e, &f).unwrap();
        assert_eq!((iso.u, iso.r, iso.s, iso.t), (u, r, s, t));
    }
}
