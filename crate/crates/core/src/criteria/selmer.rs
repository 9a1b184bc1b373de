use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};

use super::CriteriaError;
use crate::arith::{is_squarefree_i64, prime_divisors, to_bigint, valuation_u64};
use crate::curves::{
    bad_primes_data, conductor, kernel_real_points, minimal_model, tate_algorithm, twist_with_kernel, CurveError,
    KernelRealPoints, WeierstrassCurve,
};
use crate::ingest::{CurveRecord, RecordStore};
use crate::quad::{make_field, Splitting};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Finite(u64),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(q) => write!(f, "{q}"),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn ser_rational<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_rationals<S: Serializer>(xs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

/// 3-adic valuation of a nonzero rational.
fn ord3(x: &BigRational) -> i32 {
    let v = |n: &BigInt| valuation_u64(n, 3).unwrap_or(0) as i32;
    v(x.numer()) - v(x.denom())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelmerRatio {
    pub place: Place,
    #[serde(serialize_with = "ser_rational")]
    pub value: BigRational,
    pub ord3: i32,
}

impl SelmerRatio {
    pub fn new(place: Place, value: BigRational) -> Self {
        let ord3 = ord3(&value);
        Self { place, value, ord3 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LocalRatio {
    Known(SelmerRatio),
    Ambiguous {
        place: Place,
        #[serde(serialize_with = "ser_rationals")]
        candidates: Vec<BigRational>,
    },
}

impl LocalRatio {
    pub fn place(&self) -> Place {
        match self {
            LocalRatio::Known(r) => r.place,
            LocalRatio::Ambiguous { place, .. } => *place,
        }
    }
}

/// The twisted isogeny phi_d: E^(d) -> E^^(d) on minimal models.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsogenyTwist {
    pub d: i64,
    pub domain: WeierstrassCurve,
    #[serde(serialize_with = "ser_rational")]
    pub kernel_x: BigRational,
    pub codomain: WeierstrassCurve,
}

pub fn isogeny_twist(record: &CurveRecord, d: i64) -> Result<IsogenyTwist, CriteriaError> {
    let iso = record.isogeny.as_ref().ok_or(CurveError::MissingIsogeny)?;
    if d == 0 || !is_squarefree_i64(d) {
        return Err(CriteriaError::Invalid(format!("d = {d} must be squarefree and nonzero")));
    }
    if d == 1 {
        let (m, map) = crate::curves::minimal_model_with_map(&record.ainvs);
        return Ok(IsogenyTwist {
            d,
            domain: m,
            kernel_x: map.map_x(&iso.kernel_x),
            codomain: minimal_model(&iso.codomain_ainvs),
        });
    }
    let (domain, kernel_x) = twist_with_kernel(&record.ainvs, &iso.kernel_x, d)?;
    let codomain = minimal_model(&iso.codomain_ainvs.quadratic_twist(d)?);
    Ok(IsogenyTwist { d, domain, kernel_x, codomain })
}

fn tamagawa_at(e: &WeierstrassCurve, q: u64) -> Result<u32, CriteriaError> {
    Ok(tate_algorithm(e, &BigUint::from(q))?.tamagawa)
}

/// c_v(phi_d). At infinity this is 1/3 when the kernel points are real and 1
/// otherwise; at 3 the value is only known to lie in {1, 3}; elsewhere it is
/// the ratio of Tamagawa numbers of codomain and domain.
pub fn selmer_ratio_local(tw: &IsogenyTwist, place: Place) -> Result<LocalRatio, CriteriaError> {
    let one = BigRational::one();
    match place {
        Place::Infinity => {
            let value = match kernel_real_points(&tw.domain, Some(&tw.kernel_x))? {
                KernelRealPoints::Z3 => BigRational::new(BigInt::one(), BigInt::from(3)),
                KernelRealPoints::Trivial => one,
            };
            Ok(LocalRatio::Known(SelmerRatio::new(place, value)))
        }
        Place::Finite(3) => {
            Ok(LocalRatio::Ambiguous { place, candidates: vec![one, BigRational::from_integer(3.into())] })
        }
        Place::Finite(q) => {
            let value = BigRational::new(
                BigInt::from(tamagawa_at(&tw.codomain, q)?),
                BigInt::from(tamagawa_at(&tw.domain, q)?),
            );
            Ok(LocalRatio::Known(SelmerRatio::new(place, value)))
        }
    }
}

/// Ratios at infinity, at 3 and at every bad prime of the twisted curves.
/// All other places contribute 1.
pub fn selmer_ratios(tw: &IsogenyTwist) -> Result<Vec<LocalRatio>, CriteriaError> {
    let mut places: BTreeSet<Place> = BTreeSet::new();
    places.insert(Place::Finite(3));
    for e in [&tw.domain, &tw.codomain] {
        for q in prime_divisors(&to_bigint(&conductor(e))) {
            let q = q.to_u64().ok_or_else(|| CriteriaError::Unsupported(format!("prime {q} too large")))?;
            places.insert(Place::Finite(q));
        }
    }
    places.insert(Place::Infinity);
    places.into_iter().map(|pl| selmer_ratio_local(tw, pl)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TInvariant {
    Resolved {
        t: i32,
        #[serde(serialize_with = "ser_rational")]
        c: BigRational,
        used_parity: bool,
    },
    Unresolved {
        #[serde(serialize_with = "ser_rationals")]
        candidates: Vec<BigRational>,
        reason: String,
    },
}

impl TInvariant {
    pub fn t(&self) -> Option<i32> {
        match self {
            TInvariant::Resolved { t, .. } => Some(*t),
            TInvariant::Unresolved { .. } => None,
        }
    }
}

/// t = ord_3 of the product of the local ratios. A single ambiguous place is
/// resolved by the parity of dim Sel_3 when it is given.
pub fn t_invariant(ratios: &[LocalRatio], selmer3_parity: Option<u32>) -> TInvariant {
    let mut known = BigRational::one();
    let mut ambiguous: Vec<&Vec<BigRational>> = Vec::new();
    for r in ratios {
        match r {
            LocalRatio::Known(s) => known *= &s.value,
            LocalRatio::Ambiguous { candidates, .. } => ambiguous.push(candidates),
        }
    }
    let mut totals = vec![known];
    for cands in &ambiguous {
        totals = totals.iter().flat_map(|t| cands.iter().map(move |c| t * c)).collect();
    }
    totals.sort();
    totals.dedup();
    match (ambiguous.len(), selmer3_parity) {
        (0, _) => {
            let c = totals.remove(0);
            TInvariant::Resolved { t: ord3(&c), c, used_parity: false }
        }
        (1, Some(parity)) => {
            let matching: Vec<BigRational> =
                totals.iter().filter(|c| ord3(c).rem_euclid(2) as u32 == parity % 2).cloned().collect();
            if matching.len() == 1 {
                let c = matching.into_iter().next().expect("one candidate");
                TInvariant::Resolved { t: ord3(&c), c, used_parity: true }
            } else {
                TInvariant::Unresolved { candidates: totals, reason: "parity does not single out a candidate".into() }
            }
        }
        (1, None) => TInvariant::Unresolved { candidates: totals, reason: "no Selmer parity data".into() },
        _ => TInvariant::Unresolved { candidates: totals, reason: "more than one ambiguous place".into() },
    }
}

/// d lies in T_0'(phi): d < 0, d = 1 mod 3 and t(phi_d) = 0.
pub fn t0prime_membership(d: i64, t: &TInvariant) -> Result<bool, CriteriaError> {
    let t = t.t().ok_or_else(|| CriteriaError::Precondition(format!("t(phi_{d}) is unresolved")))?;
    Ok(d < 0 && d.mod_floor(&3) == 1 && t == 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TZeroReport {
    pub curve: String,
    pub d: i64,
    pub twist: IsogenyTwist,
    pub twist_label: Option<String>,
    pub conductor: String,
    pub good_at_3: bool,
    pub three_in_k: Option<Splitting>,
    pub ratios: Vec<LocalRatio>,
    pub selmer3_parity: Option<u32>,
    pub t: TInvariant,
    pub m: Option<u32>,
    pub in_t0prime: Option<bool>,
}

/// Local ratios, t and membership in T_0'(phi) for the twist by d. Parity
/// data for the twist is looked up in `store`.
pub fn tzero_report(store: &RecordStore, record: &CurveRecord, d: i64) -> Result<TZeroReport, CriteriaError> {
    let tw = isogeny_twist(record, d)?;
    let ratios = selmer_ratios(&tw)?;
    let twist_record = store.find_curve(&tw.domain);
    let parity = twist_record.as_ref().and_then(|r| r.selmer3_dim).map(|x| x % 2);
    let t = t_invariant(&ratios, parity);
    let n = conductor(&record.ainvs);
    let good_at_3 = bad_primes_data(&record.ainvs).iter().all(|ld| ld.prime() != BigUint::from(3u32));
    let three_in_k = if d < 0 { Some(make_field(d)?.splitting(3)) } else { None };
    let in_t0prime = t.t().map(|tv| d < 0 && d.mod_floor(&3) == 1 && tv == 0);
    Ok(TZeroReport {
        curve: record.label.clone(),
        d,
        twist: tw,
        twist_label: twist_record.map(|r| r.label),
        conductor: n.to_string(),
        good_at_3,
        three_in_k,
        ratios,
        selmer3_parity: parity,
        m: t.t().map(|x| x.unsigned_abs()),
        t,
        in_t0prime,
    })
}
