use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use super::CriteriaError;
use crate::arith::{is_prime_u64, is_squarefree_i64};
use crate::curves::{
    bad_primes_data, count_points, minimal_model, torsion_p_trivial, CurveError, TorsionCertificate, WeierstrassCurve,
};
use crate::ingest::{CurveRecord, RecordStore};
use crate::padic::ProjectiveLineFp;
use crate::series::{excluded_line, BivariateSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    ComputedPass,
    ComputedFail,
    IngestedPass,
    IngestedFail,
    Unknown,
}

impl Status {
    pub fn is_pass(self) -> bool {
        matches!(self, Status::ComputedPass | Status::IngestedPass)
    }

    pub fn is_fail(self) -> bool {
        matches!(self, Status::ComputedFail | Status::IngestedFail)
    }

    pub(crate) fn computed(ok: bool) -> Self {
        if ok {
            Status::ComputedPass
        } else {
            Status::ComputedFail
        }
    }

    pub(crate) fn ingested(ok: bool) -> Self {
        if ok {
            Status::IngestedPass
        } else {
            Status::IngestedFail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::ComputedPass => "computed-pass",
            Status::ComputedFail => "computed-fail",
            Status::IngestedPass => "ingested-pass",
            Status::IngestedFail => "ingested-fail",
            Status::Unknown => "unknown",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisStatus {
    pub name: String,
    pub status: Status,
    pub evidence: String,
}

impl HypothesisStatus {
    pub(crate) fn new(name: &str, status: Status, evidence: impl Into<String>) -> Self {
        Self { name: name.to_string(), status, evidence: evidence.into() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum H10Gen {
    Satisfied,
    NotEstablished,
}

impl fmt::Display for H10Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            H10Gen::Satisfied => "satisfied",
            H10Gen::NotEstablished => "not-established",
        })
    }
}

#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub curve: String,
    pub p: u64,
    pub d: i64,
    /// Minimal model of E^(d).
    pub twist: WeierstrassCurve,
    pub twist_label: Option<String>,
    pub hypotheses: Vec<HypothesisStatus>,
    pub h10gen: H10Gen,
    pub excluded_line: Option<ProjectiveLineFp>,
    pub excluded_line_note: String,
    pub lambda_cyc_K: Option<u32>,
}

impl Verdict {
    pub fn is_satisfied(&self) -> bool {
        self.h10gen == H10Gen::Satisfied
    }

    pub fn hypothesis(&self, name: &str) -> Option<&HypothesisStatus> {
        self.hypotheses.iter().find(|h| h.name == name)
    }

    /// Identifies the excluded line from the two-variable characteristic
    /// series. Only meaningful once the verdict is satisfied.
    pub fn attach_series(&mut self, f: &BivariateSeries) -> Result<(), CriteriaError> {
        if f.prime() != self.p {
            return Err(CriteriaError::Invalid(format!(
                "series is over p = {} but the check is for p = {}",
                f.prime(),
                self.p
            )));
        }
        if self.is_satisfied() {
            let line = excluded_line(f)?;
            self.excluded_line_note = format!("identified from series: {line}");
            self.excluded_line = Some(line);
        }
        Ok(())
    }
}

/// #E(F_p) and a_p on a model with good reduction at p.
pub(crate) fn reduction_at(e: &WeierstrassCurve, p: u64) -> Result<(u64, i64), CurveError> {
    let c = count_points(e, p)?;
    Ok((c.count, c.trace))
}

/// Product of the Tamagawa numbers at the bad primes other than p.
pub(crate) fn tamagawa_away_from(e: &WeierstrassCurve, p: u64) -> BigUint {
    let p = BigUint::from(p);
    bad_primes_data(e)
        .iter()
        .filter(|ld| ld.prime() != p)
        .fold(BigUint::one(), |acc, ld| acc * BigUint::from(ld.tamagawa))
}

pub(crate) fn corank_status(name: &str, rec: Option<&CurveRecord>, p: u64, want: u32) -> HypothesisStatus {
    match rec.map(|r| (r, r.corank(p))) {
        None => HypothesisStatus::new(name, Status::Unknown, "no attested record"),
        Some((r, None)) => {
            HypothesisStatus::new(name, Status::Unknown, format!("{}: no attested corank at {p}", r.label))
        }
        Some((r, Some(c))) => {
            HypothesisStatus::new(name, Status::ingested(c == want), format!("{}: corank {c} (need {want})", r.label))
        }
    }
}

pub(crate) fn regulator_status(name: &str, rec: Option<&CurveRecord>, p: u64) -> HypothesisStatus {
    match rec.map(|r| (r, r.regulator_is_unit(p))) {
        None => HypothesisStatus::new(name, Status::Unknown, "no attested record"),
        Some((r, None)) => {
            HypothesisStatus::new(name, Status::Unknown, format!("{}: no attested regulator flag at {p}", r.label))
        }
        Some((r, Some(u))) => HypothesisStatus::new(
            name,
            Status::ingested(u),
            format!("{}: regulator {} at {p}", r.label, if u { "unit" } else { "non-unit" }),
        ),
    }
}

pub(crate) fn sha_status(name: &str, rec: Option<&CurveRecord>, p: u64) -> HypothesisStatus {
    match rec.map(|r| (r, r.sha_order.as_ref())) {
        None => HypothesisStatus::new(name, Status::Unknown, "no attested record"),
        Some((r, None)) => HypothesisStatus::new(name, Status::Unknown, format!("{}: no attested Sha order", r.label)),
        Some((r, Some(s))) => {
            let ok = !(s % BigInt::from(p)).is_zero();
            HypothesisStatus::new(name, Status::ingested(ok), format!("{}: #Sha = {s}", r.label))
        }
    }
}

/// Conditions (2), (3), (4) for one curve at p, all computed.
pub(crate) fn local_statuses(e: &WeierstrassCurve, p: u64, suffix: &str) -> Vec<HypothesisStatus> {
    let ordinary = format!("ordinary_{suffix}");
    let anomalous = format!("non_anomalous_{suffix}");
    let tamagawa = format!("tamagawa_{suffix}");
    let mut out = Vec::with_capacity(3);
    match reduction_at(e, p) {
        Ok((count, ap)) => {
            out.push(HypothesisStatus::new(
                &ordinary,
                Status::computed(ap.rem_euclid(p as i64) != 0),
                format!("a_{p} = {ap}"),
            ));
            out.push(HypothesisStatus::new(
                &anomalous,
                Status::computed(count % p != 0),
                format!("#E(F_{p}) = {count}, a_{p} = {ap}"),
            ));
        }
        Err(CurveError::BadReduction(_)) => {
            out.push(HypothesisStatus::new(&ordinary, Status::ComputedFail, format!("bad reduction at {p}")));
            out.push(HypothesisStatus::new(&anomalous, Status::ComputedFail, format!("bad reduction at {p}")));
        }
        Err(e) => {
            out.push(HypothesisStatus::new(&ordinary, Status::Unknown, e.to_string()));
            out.push(HypothesisStatus::new(&anomalous, Status::Unknown, e.to_string()));
        }
    }
    let prod = tamagawa_away_from(e, p);
    let ok = !(&prod % BigUint::from(p)).is_zero();
    out.push(HypothesisStatus::new(&tamagawa, Status::computed(ok), format!("prod_(l != {p}) c_l = {prod}")));
    out
}

fn torsion_status(e: &WeierstrassCurve, twist: &WeierstrassCurve, p: u64) -> HypothesisStatus {
    let describe = |c: &TorsionCertificate| match c {
        TorsionCertificate::CertifiedTrivial { ell, count } => format!("#E(F_{ell}) = {count}"),
        TorsionCertificate::Unknown => "uncertified".to_string(),
    };
    let a = torsion_p_trivial(e, p);
    let b = torsion_p_trivial(twist, p);
    let status = if a.is_trivial() && b.is_trivial() { Status::ComputedPass } else { Status::Unknown };
    HypothesisStatus::new("torsion_trivial", status, format!("E: {}; twist: {}", describe(&a), describe(&b)))
}

/// Checks the hypotheses for (E, p, K = Q(sqrt(d))). Attested facts for the
/// twist are looked up in `store` by minimal model; anything missing leaves
/// the verdict not-established.
pub fn h10_check(store: &RecordStore, record: &CurveRecord, p: u64, d: i64) -> Result<Verdict, CriteriaError> {
    if p < 3 || !is_prime_u64(p) {
        return Err(CriteriaError::Invalid(format!("p = {p} must be an odd prime")));
    }
    if d >= 0 || !is_squarefree_i64(d) {
        return Err(CriteriaError::Invalid(format!("d = {d} must be negative and squarefree")));
    }
    let e = record.minimal_curve();
    let twist = minimal_model(&e.quadratic_twist(d)?);
    let twist_record = store.find_curve(&twist);
    let tr = twist_record.as_ref();

    let mut hyps =
        vec![corank_status("selmer_corank_E", Some(record), p, 1), corank_status("selmer_corank_twist", tr, p, 0)];
    for (a, b) in local_statuses(&e, p, "E").into_iter().zip(local_statuses(&twist, p, "twist")) {
        hyps.push(a);
        hyps.push(b);
    }
    hyps.push(regulator_status("regulator_unit_E", Some(record), p));
    hyps.push(regulator_status("regulator_unit_twist", tr, p));
    hyps.push(sha_status("sha_coprime_E", Some(record), p));
    hyps.push(sha_status("sha_coprime_twist", tr, p));
    hyps.push(torsion_status(&e, &twist, p));

    let satisfied = hyps.iter().all(|h| h.status.is_pass());
    Ok(Verdict {
        curve: record.label.clone(),
        p,
        d,
        twist,
        twist_label: twist_record.map(|r| r.label),
        hypotheses: hyps,
        h10gen: if satisfied { H10Gen::Satisfied } else { H10Gen::NotEstablished },
        excluded_line: None,
        excluded_line_note: if satisfied {
            "exists and is unique, not identified from curve data".to_string()
        } else {
            "not applicable".to_string()
        },
        // lambda(E/Q_cyc) = 1 and lambda(E^(d)/Q_cyc) = 0 once every condition holds
        lambda_cyc_K: if satisfied { Some(1) } else { None },
    })
}
