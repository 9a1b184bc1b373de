use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

use h10_core::padic::{PadicNumber, ProjectiveLineFp, Valuation};
use h10_core::series::{excluded_line, implicit_solve, mu_lambda, specialize_line, BivariateSeries, UnivariateSeries};

const N: u32 = 20;

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7, 11, 13])
}

fn padic(p: u64, x: i64) -> PadicNumber {
    PadicNumber::from_i64(p, N, x).unwrap()
}

/// A series with mu = 0 and the given lambda: p-divisible below lambda,
/// a unit at lambda.
fn with_lambda(p: u64, lambda: usize, cap: usize, raw: &[i64]) -> UnivariateSeries {
    let coeffs: Vec<i64> = (0..=cap)
        .map(|i| {
            let r = raw[i % raw.len()];
            match i.cmp(&lambda) {
                std::cmp::Ordering::Less => r * p as i64,
                std::cmp::Ordering::Equal => {
                    if r.rem_euclid(p as i64) == 0 {
                        r + 1
                    } else {
                        r
                    }
                }
                std::cmp::Ordering::Greater => r,
            }
        })
        .collect();
    UnivariateSeries::from_i64s(p, N, cap, &coeffs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn unit_inverse(p in prime(), x in -1_000_000i64..1_000_000) {
        let x = padic(p, x);
        prop_assume!(x.is_unit());
        prop_assert!(x.mul(&x.invert().unwrap()).unwrap().is_one());
    }

    #[test]
    fn valuation_is_additive(p in prime(), x in 1i64..100_000, y in 1i64..100_000) {
        let (a, b) = (padic(p, x), padic(p, y));
        let (Valuation::Finite(va), Valuation::Finite(vb)) = (a.valuation(), b.valuation()) else {
            return Err(TestCaseError::fail("nonzero integer has infinite valuation"));
        };
        prop_assert_eq!(a.mul(&b).unwrap().valuation(), Valuation::Finite(va + vb));
    }

    #[test]
    fn add_then_sub(p in prime(), x in any::<i64>(), y in any::<i64>()) {
        let (a, b) = (padic(p, x), padic(p, y));
        prop_assert_eq!(a.add(&b).unwrap().sub(&b).unwrap(), a);
    }

    #[test]
    fn lambda_is_additive(
        p in prime(),
        l1 in 0usize..4,
        l2 in 0usize..4,
        r1 in prop::collection::vec(-50i64..50, 1..6),
        r2 in prop::collection::vec(-50i64..50, 1..6),
    ) {
        let cap = 10;
        let h1 = with_lambda(p, l1, cap, &r1);
        let h2 = with_lambda(p, l2, cap, &r2);
        let prod = mu_lambda(&h1.mul(&h2).unwrap()).unwrap();
        prop_assert_eq!((prod.mu, prod.lambda), (0, l1 + l2));
    }

    #[test]
    fn mu_is_additive(p in prime(), m1 in 0u32..3, m2 in 0u32..3, r in prop::collection::vec(-50i64..50, 1..6)) {
        let cap = 8;
        let base = with_lambda(p, 1, cap, &r);
        let scale = |m: u32| UnivariateSeries::from_i64s(p, N, cap, &[(p as i64).pow(m)]).unwrap();
        let h1 = base.mul(&scale(m1)).unwrap();
        let h2 = base.mul(&scale(m2)).unwrap();
        let inv = mu_lambda(&h1.mul(&h2).unwrap()).unwrap();
        prop_assert_eq!((inv.mu, inv.lambda), (m1 + m2, 2));
    }

    #[test]
    fn line_is_independent_of_scaling(
        p in prime(),
        a in -500i64..500,
        b in -500i64..500,
        u in 1i64..50,
        raw in prop::collection::vec(-1000i64..1000, 15),
    ) {
        prop_assume!(a.rem_euclid(p as i64) != 0 && u % p as i64 != 0);
        let cap = 4;
        let mut entries = Vec::new();
        let mut k = 0;
        for i in 0..=cap {
            for j in 0..=cap - i {
                entries.push((i, j, BigInt::from(raw[k])));
                k += 1;
            }
        }
        let f = BivariateSeries::from_entries(p, N, cap, &entries).unwrap();
        let h = specialize_line(&f, &padic(p, a), &padic(p, b)).unwrap();
        let hu = specialize_line(&f, &padic(p, a * u), &padic(p, b * u)).unwrap();
        prop_assert_eq!(h, hu);
    }

    #[test]
    fn implicit_solve_has_no_constant_term(p in prime(), a in -500i64..500, b in -500i64..500) {
        prop_assume!(a.rem_euclid(p as i64) != 0);
        let g = implicit_solve(&padic(p, a), &padic(p, b), 6).unwrap();
        prop_assert!(g.coeff(0).is_zero());
        prop_assert_eq!(BigUint::from(g.coeff(1).reduce_mod_p()), BigUint::from((-b * inv_mod(a, p)).rem_euclid(p as i64) as u64));
    }

    #[test]
    fn transpose_is_an_involution(p in prime(), raw in prop::collection::vec(0i64..1000, 10)) {
        let cap = 3;
        let mut entries = Vec::new();
        let mut k = 0;
        for i in 0..=cap {
            for j in 0..=cap - i {
                entries.push((i, j, BigInt::from(raw[k])));
                k += 1;
            }
        }
        let f = BivariateSeries::from_entries(p, N, cap, &entries).unwrap();
        prop_assert_eq!(f.transpose().transpose(), f.clone());
        prop_assert_eq!(f.transpose().coeff(0, 1), f.coeff(1, 0));
    }
}

fn inv_mod(a: i64, p: u64) -> i64 {
    let p = p as i64;
    (1..p).find(|x| (a.rem_euclid(p) * x) % p == 1).unwrap()
}

#[test]
fn excluded_line_reads_linear_terms() {
    let f = BivariateSeries::from_i64_entries(5, N, 3, &[(0, 0, 5), (0, 1, 2), (1, 0, 3)]).unwrap();
    assert_eq!(excluded_line(&f).unwrap(), ProjectiveLineFp::from_ints(5, 3, 2).unwrap());
}

#[test]
fn excluded_line_rejects_non_unit_y_coefficient() {
    let f = BivariateSeries::from_i64_entries(5, N, 3, &[(0, 0, 5), (0, 1, 10), (1, 0, 3)]).unwrap();
    assert!(excluded_line(&f).is_err());
}

#[test]
fn zero_series_has_no_invariants() {
    let z = UnivariateSeries::zero(3, N, 5).unwrap();
    assert!(mu_lambda(&z).is_err());
}

#[test]
fn lambda_at_cap_is_not_certified() {
    let h = UnivariateSeries::from_i64s(3, N, 3, &[3, 3, 3, 1]).unwrap();
    let inv = mu_lambda(&h).unwrap();
    assert_eq!(inv.lambda, 3);
    assert!(!inv.certified);
}
