use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::verdict::{corank_status, local_statuses, regulator_status, HypothesisStatus, Status};
use super::CriteriaError;
use crate::arith::{is_prime_u64, prime_divisors, primes_below, to_bigint};
use crate::curves::{conductor, rational_two_torsion_count, two_division_frobenius_order, WeierstrassCurve};
use crate::ingest::CurveRecord;
use crate::padic::legendre_euler;
use crate::quad::{ImagQuadField, Splitting};

struct Context {
    curve: WeierstrassCurve,
    conductor: BigInt,
    /// Primes dividing pN.
    pn_primes: Vec<u64>,
}

impl Context {
    fn new(record: &CurveRecord, p: u64) -> Result<Self, CriteriaError> {
        let curve = record.minimal_curve();
        let conductor = to_bigint(&conductor(&curve));
        let mut pn_primes: Vec<u64> = prime_divisors(&conductor)
            .iter()
            .map(|q| q.to_u64().ok_or_else(|| CriteriaError::Unsupported(format!("conductor prime {q} too large"))))
            .collect::<Result<_, _>>()?;
        if !pn_primes.contains(&p) {
            pn_primes.push(p);
            pn_primes.sort_unstable();
        }
        Ok(Self { curve, conductor, pn_primes })
    }

    fn test(&self, ell: u64, k0: &ImagQuadField) -> Result<bool, CriteriaError> {
        if !is_prime_u64(ell) {
            return Err(CriteriaError::Invalid(format!("{ell} is not prime")));
        }
        if ell == 2 || (&self.conductor % ell).to_u64() == Some(0) {
            return Err(CriteriaError::Invalid(format!("{ell} divides 2N = {}", &self.conductor * 2u32)));
        }
        if k0.splitting(ell) != Splitting::Split {
            return Ok(false);
        }
        if !self.pn_primes.iter().all(|&q| legendre_euler(ell as i64, q) == 1) {
            return Ok(false);
        }
        if ell % 4 != 1 {
            return Ok(false);
        }
        Ok(two_division_frobenius_order(&self.curve, ell)? == 3)
    }
}

/// Membership of ell in the set S: ell splits in K0, is a nonzero square
/// modulo every prime dividing pN, is 1 mod 4, and its Frobenius has order 3
/// in the 2-division field.
pub fn kriz_li_s_test(ell: u64, record: &CurveRecord, k0: &ImagQuadField, p: u64) -> Result<bool, CriteriaError> {
    Context::new(record, p)?.test(ell, k0)
}

/// Members of S strictly below `bound`, ascending.
pub fn s_primes(record: &CurveRecord, k0: &ImagQuadField, p: u64, bound: u64) -> Result<Vec<u64>, CriteriaError> {
    let ctx = Context::new(record, p)?;
    let mut out = Vec::new();
    for ell in primes_below(bound) {
        if ell == 2 || (&ctx.conductor % ell).to_u64() == Some(0) {
            continue;
        }
        if ctx.test(ell, k0)? {
            out.push(ell);
        }
    }
    Ok(out)
}

/// The curve and field conditions under which S yields twists satisfying
/// the criterion. The Heegner condition is only ever ingested.
pub fn kriz_li_preconditions(
    record: &CurveRecord,
    k0: &ImagQuadField,
    p: u64,
) -> Result<Vec<HypothesisStatus>, CriteriaError> {
    if p < 3 || !is_prime_u64(p) {
        return Err(CriteriaError::Invalid(format!("p = {p} must be an odd prime")));
    }
    let ctx = Context::new(record, p)?;
    let e = &ctx.curve;
    let roots = rational_two_torsion_count(e);
    let mut out = vec![HypothesisStatus::new(
        "two_torsion_trivial",
        Status::computed(roots == 0),
        format!("{roots} rational roots of the 2-division cubic"),
    )];
    out.push(corank_status("selmer_corank_E", Some(record), p, 1));
    out.extend(local_statuses(e, p, "E"));
    out.push(regulator_status("regulator_unit_E", Some(record), p));
    let two = k0.splitting(2);
    out.push(HypothesisStatus::new(
        "two_splits_in_K0",
        Status::computed(two == Splitting::Split),
        format!("2 is {two:?}").to_lowercase(),
    ));
    let bad: Vec<String> =
        ctx.pn_primes.iter().filter(|&&q| k0.splitting(q) != Splitting::Split).map(|q| q.to_string()).collect();
    out.push(HypothesisStatus::new(
        "pN_primes_split_in_K0",
        Status::computed(bad.is_empty()),
        if bad.is_empty() {
            format!("all of {:?} split", ctx.pn_primes)
        } else {
            format!("not split: {}", bad.join(", "))
        },
    ));
    out.push(match record.heegner_flag {
        Some(f) => {
            HypothesisStatus::new("heegner_flag", Status::ingested(f), format!("{}: attested {f}", record.label))
        }
        None => HypothesisStatus::new(
            "heegner_flag",
            Status::Unknown,
            format!("{}: no attested Heegner flag", record.label),
        ),
    });
    Ok(out)
}
