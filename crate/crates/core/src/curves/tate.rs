use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::minimal::minimal_model;
use super::polymod::{count_roots, has_root};
use super::weierstrass::WeierstrassCurve;
use super::CurveError;
use crate::arith::{factor, is_probable_prime};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reduction {
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
    Additive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kodaira {
    I(u32),
    II,
    III,
    IV,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I(n) => write!(f, "I{n}"),
            Kodaira::II => f.write_str("II"),
            Kodaira::III => f.write_str("III"),
            Kodaira::IV => f.write_str("IV"),
            Kodaira::IStar(n) => write!(f, "I{n}*"),
            Kodaira::IVStar => f.write_str("IV*"),
            Kodaira::IIIStar => f.write_str("III*"),
            Kodaira::IIStar => f.write_str("II*"),
        }
    }
}

impl Serialize for Kodaira {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Local data at one prime, as produced by Tate's algorithm.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalData {
    #[serde(serialize_with = "crate::json::bigint::serialize", rename = "prime")]
    prime_int: BigInt,
    pub reduction: Reduction,
    pub kodaira: Kodaira,
    pub tamagawa: u32,
    pub conductor_exponent: u32,
    pub discriminant_valuation: u32,
    #[serde(skip)]
    pub minimal_model: WeierstrassCurve,
}

impl LocalData {
    pub fn prime(&self) -> BigUint {
        self.prime_int.to_biguint().expect("positive prime")
    }
}

struct Local {
    p: BigInt,
    pu: BigUint,
    half: BigInt,
}

impl Local {
    fn v(&self, x: &BigInt) -> u32 {
        if x.is_zero() {
            return u32::MAX;
        }
        let mut x = x.clone();
        let mut k = 0;
        loop {
            let (q, r) = x.div_rem(&self.p);
            if !r.is_zero() {
                return k;
            }
            x = q;
            k += 1;
        }
    }

    fn md(&self, x: &BigInt) -> BigInt {
        x.mod_floor(&self.p)
    }

    fn inv(&self, x: &BigInt) -> BigInt {
        self.md(&x.extended_gcd(&self.p).x)
    }

    fn divisible(&self, x: &BigInt) -> bool {
        self.md(x).is_zero()
    }

    fn is(&self, n: u32) -> bool {
        self.p == BigInt::from(n)
    }

    fn root(&self, c: &[BigInt]) -> bool {
        has_root(c, &self.pu)
    }
}

fn rst(c: &WeierstrassCurve, r: &BigInt, s: &BigInt, t: &BigInt) -> WeierstrassCurve {
    c.change_coordinates(&BigInt::one(), r, s, t).expect("translation keeps integrality")
}

fn exact(x: &BigInt, d: &BigInt) -> BigInt {
    debug_assert!((x % d).is_zero());
    x / d
}

/// Tate's algorithm at a prime, on any integral model.
pub fn tate_algorithm(e: &WeierstrassCurve, prime: &BigUint) -> Result<LocalData, CurveError> {
    if !is_probable_prime(prime) {
        return Err(CurveError::NotPrime(prime.to_string()));
    }
    let p = BigInt::from_biguint(Sign::Plus, prime.clone());
    let l = Local {
        half: if prime == &BigUint::from(2u32) { BigInt::zero() } else { (&p + 1u32) / 2u32 },
        p: p.clone(),
        pu: prime.clone(),
    };
    let p2 = &p * &p;
    let p3 = &p2 * &p;
    let p4 = &p2 * &p2;
    let mut c = e.clone();

    loop {
        let inv = c.invariants();
        let vd = l.v(&inv.discriminant);
        let done = |reduction, kodaira, tamagawa, f: u32, model: WeierstrassCurve| LocalData {
            prime_int: p.clone(),
            reduction,
            kodaira,
            tamagawa,
            conductor_exponent: f,
            discriminant_valuation: vd,
            minimal_model: model,
        };
        if vd == 0 {
            return Ok(done(Reduction::Good, Kodaira::I(0), 1, 0, c));
        }

        // move the singular point to (0, 0)
        let (r, t) = if l.is(2) {
            if l.divisible(&inv.b2) {
                let r = l.md(&c.a4);
                let t = l.md(&(((&r + &c.a2) * &r + &c.a4) * &r + &c.a6));
                (r, t)
            } else {
                let r = l.md(&c.a3);
                let t = l.md(&(&c.a4 + &r * &r));
                (r, t)
            }
        } else if l.is(3) {
            let r = if l.divisible(&inv.b2) { l.md(&-&inv.b6) } else { l.md(&(-l.inv(&inv.b2) * &inv.b4)) };
            let t = l.md(&(&c.a1 * &r + &c.a3));
            (r, t)
        } else {
            let r = if l.divisible(&inv.c4) {
                l.md(&(-l.inv(&BigInt::from(12)) * &inv.b2))
            } else {
                l.md(&(-l.inv(&(&inv.c4 * 12u32)) * (&inv.c6 + &inv.b2 * &inv.c4)))
            };
            let t = l.md(&(-&l.half * (&c.a1 * &r + &c.a3)));
            (r, t)
        };
        c = rst(&c, &r, &BigInt::zero(), &t);
        let inv = c.invariants();
        debug_assert!(l.divisible(&c.a3) && l.divisible(&c.a4) && l.divisible(&c.a6));

        if l.v(&inv.c4) == 0 {
            let split = l.root(&[-c.a2.clone(), c.a1.clone(), BigInt::one()]);
            let (red, cp) = if split {
                (Reduction::SplitMultiplicative, vd)
            } else if vd.is_multiple_of(2u32) {
                (Reduction::NonsplitMultiplicative, 2)
            } else {
                (Reduction::NonsplitMultiplicative, 1)
            };
            return Ok(done(red, Kodaira::I(vd), cp, 1, c));
        }
        if l.v(&c.a6) < 2 {
            return Ok(done(Reduction::Additive, Kodaira::II, 1, vd, c));
        }
        if l.v(&inv.b8) < 3 {
            return Ok(done(Reduction::Additive, Kodaira::III, 2, vd - 1u32, c));
        }
        if l.v(&inv.b6) < 3 {
            let cp = if l.root(&[-exact(&c.a6, &p2), exact(&c.a3, &p), BigInt::one()]) { 3 } else { 1 };
            return Ok(done(Reduction::Additive, Kodaira::IV, cp, vd - 2u32, c));
        }

        // now arrange p | a1, a2; p^2 | a3, a4; p^3 | a6
        let (s, t) = if l.is(2) {
            (l.md(&c.a2), &p * l.md(&exact(&c.a6, &p2)))
        } else if l.is(3) {
            (c.a1.clone(), c.a3.clone())
        } else {
            (l.md(&(-&c.a1 * &l.half)), (-&c.a3 * &l.half).mod_floor(&p2))
        };
        c = rst(&c, &BigInt::zero(), &s, &t);

        let b = exact(&c.a2, &p);
        let cc = exact(&c.a4, &p2);
        let d = exact(&c.a6, &p3);
        let w = &d * &d * 27u32 - &b * &b * &cc * &cc + &b * &b * &b * &d * 4u32 - &b * &cc * &d * 18u32
            + &cc * &cc * &cc * 4u32;
        let x = &cc * 3u32 - &b * &b;

        if !l.divisible(&w) {
            let roots = count_roots(&[d.clone(), cc.clone(), b.clone(), BigInt::one()], prime);
            let cp = 1 + u32::try_from(roots).expect("at most three roots");
            return Ok(done(Reduction::Additive, Kodaira::IStar(0), cp, vd - 4u32, c));
        }

        if !l.divisible(&x) {
            let r = if l.is(2) {
                l.md(&cc)
            } else if l.is(3) {
                l.md(&(&cc * l.inv(&b)))
            } else {
                l.md(&((&b * &cc - &d * 9u32) * l.inv(&(&x * 2u32))))
            };
            c = rst(&c, &(&p * r), &BigInt::zero(), &BigInt::zero());
            let (mut ix, mut iy) = (3u32, 3u32);
            let (mut mx, mut my) = (p2.clone(), p2.clone());
            let cp;
            loop {
                let a3t = exact(&c.a3, &my);
                let a6t = exact(&c.a6, &(&mx * &my));
                if !l.divisible(&(&a3t * &a3t + &a6t * 4u32)) {
                    cp = if l.root(&[-a6t, a3t, BigInt::one()]) { 4 } else { 2 };
                    break;
                }
                let t = if l.is(2) { &my * l.md(&a6t) } else { &my * l.md(&(-&a3t * &l.half)) };
                c = rst(&c, &BigInt::zero(), &BigInt::zero(), &t);
                my = &my * &p;
                iy += 1;
                let a2t = exact(&c.a2, &p);
                let a4t = exact(&c.a4, &(&p * &mx));
                let a6t = exact(&c.a6, &(&mx * &my));
                if !l.divisible(&(&a4t * &a4t - &a6t * &a2t * 4u32)) {
                    cp = if l.root(&[a6t, a4t, a2t]) { 4 } else { 2 };
                    break;
                }
                let r = if l.is(2) {
                    &mx * l.md(&(&a6t * l.inv(&a2t)))
                } else {
                    &mx * l.md(&(-&a4t * l.inv(&(&a2t * 2u32))))
                };
                c = rst(&c, &r, &BigInt::zero(), &BigInt::zero());
                mx = &mx * &p;
                ix += 1;
            }
            let m = ix + iy - 5u32;
            return Ok(done(Reduction::Additive, Kodaira::IStar(m), cp, vd + 1u32 - ix - iy, c));
        }

        // triple root
        let r = if l.is(2) {
            l.md(&b)
        } else if l.is(3) {
            l.md(&-&d)
        } else {
            l.md(&(-&b * l.inv(&BigInt::from(3))))
        };
        c = rst(&c, &(&p * r), &BigInt::zero(), &BigInt::zero());
        let x3 = exact(&c.a3, &p2);
        let x6 = exact(&c.a6, &p4);
        if !l.divisible(&(&x3 * &x3 + &x6 * 4u32)) {
            let cp = if l.root(&[-x6, x3, BigInt::one()]) { 3 } else { 1 };
            return Ok(done(Reduction::Additive, Kodaira::IVStar, cp, vd - 6u32, c));
        }
        let t = if l.is(2) { -&p2 * l.md(&x6) } else { &p2 * l.md(&(-&x3 * &l.half)) };
        c = rst(&c, &BigInt::zero(), &BigInt::zero(), &t);
        if l.v(&c.a4) < 4 {
            return Ok(done(Reduction::Additive, Kodaira::IIIStar, 2, vd - 7u32, c));
        }
        if l.v(&c.a6) < 6 {
            return Ok(done(Reduction::Additive, Kodaira::IIStar, 1, vd - 8u32, c));
        }
        // not minimal at p: scale down and start over
        c = c
            .change_coordinates(&p, &BigInt::zero(), &BigInt::zero(), &BigInt::zero())
            .expect("non-minimal model scales integrally");
    }
}

/// Local data at every prime of bad reduction, in increasing order of the prime.
pub fn bad_primes_data(e: &WeierstrassCurve) -> Vec<LocalData> {
    let m = minimal_model(e);
    factor(&m.discriminant()).into_iter().map(|(p, _)| tate_algorithm(&m, &p).expect("factor returns primes")).collect()
}

/// Conductor of the curve, assembled from the local exponents.
pub fn conductor(e: &WeierstrassCurve) -> BigUint {
    bad_primes_data(e).iter().fold(BigUint::one(), |acc, ld| acc * ld.prime().pow(ld.conductor_exponent))
}

/// Product of the Tamagawa numbers over all primes.
pub fn tamagawa_product(e: &WeierstrassCurve) -> BigUint {
    bad_primes_data(e).iter().fold(BigUint::one(), |acc, ld| acc * ld.tamagawa)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(a: [i64; 5]) -> WeierstrassCurve {
        WeierstrassCurve::from_i64s(a).unwrap()
    }

    fn summary(e: &WeierstrassCurve) -> Vec<(u64, String, u32, u32)> {
        bad_primes_data(e)
            .into_iter()
            .map(|ld| {
                let p: u64 = ld.prime().try_into().unwrap();
                (p, ld.kodaira.to_string(), ld.tamagawa, ld.conductor_exponent)
            })
            .collect()
    }

    #[test]
    fn semistable_examples() {
        assert_eq!(summary(&curve([0, 0, 1, -1, 0])), vec![(37, "I1".into(), 1, 1)]);
        assert_eq!(summary(&curve([1, -1, 0, -1, 1])), vec![(2, "I2".into(), 2, 1), (29, "I1".into(), 1, 1)]);
        assert_eq!(conductor(&curve([1, 0, 0, -2, 1])), BigUint::from(61u32));
    }

    #[test]
    fn additive_at_two() {
        // y^2 = x^3 - x has conductor 32, type III at 2
        let e = curve([0, 0, 0, -1, 0]);
        assert_eq!(summary(&e), vec![(2, "III".into(), 2, 5)]);
    }

    #[test]
    fn example_curve_conductor() {
        let e = curve([0, 0, 0, 216, -54]);
        assert_eq!(conductor(&e), BigUint::from(1216u32));
        let ld = tate_algorithm(&minimal_model(&e), &BigUint::from(3u32)).unwrap();
        assert_eq!(ld.reduction, Reduction::Good);
    }

    #[test]
    fn additive_types_away_from_two_and_three() {
        // y^2 = x^3 + 5^k shapes: II (v=2), IV (v=4), I0* (v=6 on x^3 - 25x), IV* , II*
        assert_eq!(tate_algorithm(&curve([0, 0, 0, 0, 5]), &5u32.into()).unwrap().kodaira, Kodaira::II);
        assert_eq!(tate_algorithm(&curve([0, 0, 0, 0, 25]), &5u32.into()).unwrap().kodaira, Kodaira::IV);
        let i0 = tate_algorithm(&curve([0, 0, 0, -25, 0]), &5u32.into()).unwrap();
        assert_eq!((i0.kodaira, i0.tamagawa), (Kodaira::IStar(0), 4));
        assert_eq!(tate_algorithm(&curve([0, 0, 0, 0, 625]), &5u32.into()).unwrap().kodaira, Kodaira::IVStar);
        assert_eq!(tate_algorithm(&curve([0, 0, 0, 0, 3125]), &5u32.into()).unwrap().kodaira, Kodaira::IIStar);
        assert_eq!(tate_algorithm(&curve([0, 0, 0, 125, 0]), &5u32.into()).unwrap().kodaira, Kodaira::IIIStar);
        assert_eq!(tate_algorithm(&curve([0, 0, 0, 5, 0]), &5u32.into()).unwrap().kodaira, Kodaira::III);
    }

    #[test]
    fn non_minimal_model_is_reduced() {
        let scaled = curve([0, 0, 0, 0, 5 * 15625]);
        let ld = tate_algorithm(&scaled, &5u32.into()).unwrap();
        assert_eq!(ld.kodaira, Kodaira::II);
        assert_eq!(ld.discriminant_valuation, 2);
    }

    #[test]
    fn stable_on_own_output() {
        for a in [[0, 0, 0, 216, -54], [0, 0, 0, -1, 0], [1, -1, 0, -1, 1], [0, 1, 0, -4, -4]] {
            let e = curve(a);
            for ld in bad_primes_data(&e) {
                let again = tate_algorithm(&ld.minimal_model, &ld.prime()).unwrap();
                assert_eq!((again.kodaira, again.tamagawa), (ld.kodaira, ld.tamagawa));
            }
        }
    }

    #[test]
    fn twist_with_odd_a3_at_additive_prime() {
        // 58a1 twisted by -7: I0* at 7
        let e = curve([1, -1, 0, -1, 1]).quadratic_twist(-7).unwrap();
        let ld = tate_algorithm(&e, &7u32.into()).unwrap();
        assert_eq!(ld.kodaira, Kodaira::IStar(0));
        assert_eq!(ld.conductor_exponent, 2);
        assert_eq!(conductor(&e), BigUint::from(2842u32));
    }
}
