use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use h10_core::criteria::{
    euler_char_check, h10_check, isogeny3_density, kriz_li_density_formula, kriz_li_s_test, scan, t0prime_membership,
    t_invariant, EulerOutcome, LocalRatio, Place, RowStatus, SelmerRatio, Status, TInvariant,
};
use h10_core::curves::Mod2Image;
use h10_core::ingest::{CurveRecord, RecordStore};
use h10_core::quad::make_field;

fn record(label: &str) -> CurveRecord {
    RecordStore::bundled().resolve(label).unwrap()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let (mut acc, mut b) = (1u64, b % m);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn is_qr(a: i64, m: u64) -> bool {
    let r = a.rem_euclid(m as i64) as u64;
    r != 0 && pow_mod(r, (m - 1) / 2, m) == 1
}

fn small_primes(bound: u64) -> Vec<u64> {
    (2..bound).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect()
}

// 37a1: y^2 + y = x^3 - x, 2-division cubic 4x^3 - 4x + 1.
fn cubic_has_root_mod(ell: u64) -> bool {
    (0..ell).any(|x| (4 * x * x % ell * x + ell * 4 - 4 * x % ell + 1).is_multiple_of(ell))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn s_test_matches_each_condition(idx in 0usize..1229) {
        let primes = small_primes(10_000);
        let ell = primes[idx];
        prop_assume!(ell != 2 && ell != 37);
        let rec = record("37a1");
        let k0 = make_field(-7).unwrap();
        let expected = is_qr(-7, ell)
            && is_qr(ell as i64, 37)
            && is_qr(ell as i64, 11)
            && ell % 4 == 1
            && !cubic_has_root_mod(ell);
        prop_assert_eq!(kriz_li_s_test(ell, &rec, &k0, 11).unwrap(), expected, "ell = {}", ell);
    }

    #[test]
    fn isogeny3_density_matches_factor_product(mask in 1u32..(1 << 8)) {
        let ps = [2u64, 3, 5, 7, 11, 13, 17, 19];
        let chosen: Vec<u64> = ps.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        let n: u64 = chosen.iter().product();
        prop_assume!(n > 1);
        let got = isogeny3_density(&BigUint::from(n), true).unwrap();
        let mut want = q(1, 3);
        if chosen.contains(&2) {
            want /= q(4, 1);
        }
        let k = chosen.len() as i64;
        let delta = if chosen.contains(&3) { 0 } else { 1 };
        want /= BigRational::from_integer(BigInt::from(2).pow((k - delta) as u32));
        for &p in chosen.iter().rev() {
            match p {
                3 => {}
                2 => want *= q(4, 3),
                _ => want *= q(p as i64, p as i64 + 1),
            }
        }
        prop_assert_eq!(&got, &want);
        prop_assert!(got > BigRational::zero() && got <= BigRational::one());
    }

    #[test]
    fn kriz_li_density_is_a_probability(k in 0u32..12, gaussian in any::<bool>()) {
        for image in [Mod2Image::S3, Mod2Image::Z3] {
            let v = kriz_li_density_formula(image, k, gaussian).unwrap();
            prop_assert!(v > BigRational::zero() && v <= BigRational::one());
            let next = kriz_li_density_formula(image, k + 1, gaussian).unwrap();
            prop_assert_eq!(next * BigRational::from_integer(2.into()), v);
        }
    }
}

#[test]
fn s_test_rejects_bad_primes() {
    let rec = record("37a1");
    let k0 = make_field(-7).unwrap();
    assert!(kriz_li_s_test(2, &rec, &k0, 11).is_err());
    assert!(kriz_li_s_test(37, &rec, &k0, 11).is_err());
    assert!(kriz_li_s_test(15, &rec, &k0, 11).is_err());
}

#[test]
fn density_rejects_bad_input() {
    assert!(isogeny3_density(&BigUint::from(12u32), true).is_err());
    assert!(isogeny3_density(&BigUint::from(1u32), true).is_err());
    assert!(isogeny3_density(&BigUint::from(11u32), false).is_err());
    assert!(kriz_li_density_formula(Mod2Image::Trivial, 1, false).is_err());
}

#[test]
fn euler_factors_in_order() {
    let r = euler_char_check(&record("549.c1"), 11).unwrap();
    let names: Vec<&str> = r.factors.iter().map(|f| f.name.as_str()).collect();
    assert_eq!(names, ["regulator", "sha", "tamagawa", "reduction_count"]);
    assert_eq!(r.outcome, EulerOutcome::Unit);
    assert_eq!(r.lambda, Some(0));
}

#[test]
fn euler_reacts_to_sha() {
    let mut rec = record("58a1");
    assert_eq!(euler_char_check(&rec, 17).unwrap().lambda, Some(1));
    rec.sha_order = Some(BigInt::from(17 * 17));
    assert_eq!(euler_char_check(&rec, 17).unwrap().outcome, EulerOutcome::NonUnit);
    rec.sha_order = None;
    assert_eq!(euler_char_check(&rec, 17).unwrap().outcome, EulerOutcome::Unknown);
}

#[test]
fn euler_rejects_supersingular() {
    // a_3 = -3
    assert!(euler_char_check(&record("37a1"), 3).is_err());
}

#[test]
fn h10_rejects_bad_parameters() {
    let store = RecordStore::bundled();
    let rec = record("58a1");
    assert!(h10_check(&store, &rec, 9, -1).is_err());
    assert!(h10_check(&store, &rec, 2, -1).is_err());
    assert!(h10_check(&store, &rec, 17, -4).is_err());
    assert!(h10_check(&store, &rec, 17, 5).is_err());
}

#[test]
fn h10_without_twist_record_is_not_established() {
    let mut store = RecordStore::empty();
    store.insert(record("58a1"));
    let v = h10_check(&store, &record("58a1"), 17, -1).unwrap();
    assert!(!v.is_satisfied());
    assert_eq!(v.hypothesis("selmer_corank_twist").unwrap().status, Status::Unknown);
    assert!(v.lambda_cyc_K.is_none());
}

fn known(place: Place, v: BigRational) -> LocalRatio {
    LocalRatio::Known(SelmerRatio::new(place, v))
}

#[test]
fn t_invariant_examples() {
    let ratios = [known(Place::Finite(2), q(3, 1)), known(Place::Infinity, q(1, 3))];
    assert_eq!(t_invariant(&ratios, None).t(), Some(0));
    let ratios = [known(Place::Finite(2), q(3, 1)), known(Place::Finite(5), q(3, 1))];
    assert_eq!(t_invariant(&ratios, None).t(), Some(2));
    let amb = LocalRatio::Ambiguous { place: Place::Finite(3), candidates: vec![q(1, 1), q(3, 1)] };
    let ratios = [known(Place::Infinity, q(1, 3)), amb.clone()];
    assert_eq!(t_invariant(&ratios, Some(1)).t(), Some(-1));
    assert_eq!(t_invariant(&ratios, Some(0)).t(), Some(0));
    assert!(matches!(t_invariant(&ratios, None), TInvariant::Unresolved { .. }));
    let two = [amb.clone(), LocalRatio::Ambiguous { place: Place::Finite(7), candidates: vec![q(1, 1), q(3, 1)] }];
    assert!(matches!(t_invariant(&two, Some(0)), TInvariant::Unresolved { .. }));
}

#[test]
fn t0prime_conditions() {
    let zero = TInvariant::Resolved { t: 0, c: q(1, 1), used_parity: false };
    let one = TInvariant::Resolved { t: 1, c: q(3, 1), used_parity: false };
    assert!(t0prime_membership(-2, &zero).unwrap());
    assert!(!t0prime_membership(-3, &zero).unwrap());
    assert!(!t0prime_membership(5, &zero).unwrap());
    assert!(!t0prime_membership(-2, &one).unwrap());
    let open = TInvariant::Unresolved { candidates: vec![], reason: String::new() };
    assert!(t0prime_membership(-2, &open).is_err());
}

#[test]
fn scan_empty_range() {
    let r = scan(&RecordStore::bundled(), &record("58a1"), 17, &[], 2).unwrap();
    assert_eq!(r.attempted, 0);
    assert!(r.fraction_satisfied.is_none());
}

#[test]
fn scan_single_satisfied() {
    let r = scan(&RecordStore::bundled(), &record("58a1"), 17, &[-1], 1).unwrap();
    assert_eq!((r.attempted, r.satisfied), (1, 1));
    assert_eq!(r.fraction_satisfied, Some(q(1, 1)));
}

#[test]
fn scan_without_twist_data_never_passes() {
    let ds: Vec<i64> = (1..=40).map(|n| -n).filter(|&d| h10_core::arith::is_squarefree_i64(d)).take(20).collect();
    assert_eq!(ds.len(), 20);
    let mut store = RecordStore::empty();
    store.insert(record("37a1"));
    let r = scan(&store, &record("37a1"), 11, &ds, 4).unwrap();
    assert_eq!(r.rows.len(), 20);
    assert_eq!(r.satisfied, 0);
    assert_eq!(r.failed + r.unknown + r.errors, 20);
    assert!(r.rows.iter().all(|row| row.status != RowStatus::Satisfied));
    let order: Vec<i64> = r.rows.iter().map(|row| row.d).collect();
    assert_eq!(order, ds);
}

#[test]
fn scan_of_isogeny_curve_reports_t() {
    let r = scan(&RecordStore::bundled(), &record("1216.o3"), 5, &[-2], 1).unwrap();
    let iso = r.isogeny.unwrap();
    assert_eq!((iso.resolved, iso.in_t0), (1, 1));
}
