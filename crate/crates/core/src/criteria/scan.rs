use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::selmer::tzero_report;
use super::verdict::{h10_check, Verdict};
use super::CriteriaError;
use crate::ingest::{CurveRecord, RecordStore};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Satisfied,
    /// Some hypothesis was checked and failed.
    Failed,
    /// Nothing failed but some attested input is missing.
    Unknown,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub d: i64,
    pub status: RowStatus,
    pub verdict: Option<Verdict>,
    pub t: Option<i32>,
    pub note: String,
}

fn ser_opt_rational<S: Serializer>(x: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

/// Counts over the twists whose t(phi_d) could be resolved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsogenyScanSummary {
    pub resolved: usize,
    pub in_t0: usize,
    /// in_t0 / resolved: an empirical stand-in for mu(T_0(phi)).
    #[serde(serialize_with = "ser_opt_rational")]
    pub empirical_t0_fraction: Option<BigRational>,
    /// Half of the above.
    #[serde(serialize_with = "ser_opt_rational")]
    pub empirical_lower_bound: Option<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub curve: String,
    pub p: u64,
    pub rows: Vec<ScanRow>,
    pub attempted: usize,
    pub satisfied: usize,
    pub failed: usize,
    pub unknown: usize,
    pub errors: usize,
    #[serde(serialize_with = "ser_opt_rational")]
    pub fraction_satisfied: Option<BigRational>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub fraction_blocked: Option<BigRational>,
    pub isogeny: Option<IsogenyScanSummary>,
}

fn row(store: &RecordStore, record: &CurveRecord, p: u64, d: i64) -> ScanRow {
    let t = if record.isogeny.is_some() { tzero_report(store, record, d).ok().and_then(|r| r.t.t()) } else { None };
    match h10_check(store, record, p, d) {
        Ok(v) => {
            let (status, note) = if v.is_satisfied() {
                (RowStatus::Satisfied, String::new())
            } else if let Some(h) = v.hypotheses.iter().find(|h| h.status.is_fail()) {
                (RowStatus::Failed, format!("{}: {}", h.name, h.evidence))
            } else {
                let missing: Vec<&str> =
                    v.hypotheses.iter().filter(|h| !h.status.is_pass()).map(|h| h.name.as_str()).collect();
                (RowStatus::Unknown, format!("missing: {}", missing.join(", ")))
            };
            ScanRow { d, status, verdict: Some(v), t, note }
        }
        Err(e) => ScanRow { d, status: RowStatus::Error, verdict: None, t, note: e.to_string() },
    }
}

fn fraction(n: usize, d: usize) -> Option<BigRational> {
    (d > 0).then(|| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

/// Runs the check for every d on up to `jobs` threads. Rows come back in
/// the order of `ds` whatever the thread count.
pub fn scan(
    store: &RecordStore,
    record: &CurveRecord,
    p: u64,
    ds: &[i64],
    jobs: usize,
) -> Result<ScanReport, CriteriaError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CriteriaError::Invalid(format!("thread pool: {e}")))?;
    let rows: Vec<ScanRow> = pool.install(|| ds.par_iter().map(|&d| row(store, record, p, d)).collect());

    let count = |s: RowStatus| rows.iter().filter(|r| r.status == s).count();
    let satisfied = count(RowStatus::Satisfied);
    let failed = count(RowStatus::Failed);
    let unknown = count(RowStatus::Unknown);
    let errors = count(RowStatus::Error);
    let attempted = rows.len() - errors;

    let isogeny = record.isogeny.as_ref().map(|_| {
        let resolved = rows.iter().filter(|r| r.t.is_some()).count();
        let in_t0 = rows.iter().filter(|r| r.t == Some(0)).count();
        let frac = fraction(in_t0, resolved);
        let half = frac.as_ref().map(|f| f / BigRational::from_integer(BigInt::from(2)));
        IsogenyScanSummary { resolved, in_t0, empirical_t0_fraction: frac, empirical_lower_bound: half }
    });

    Ok(ScanReport {
        curve: record.label.clone(),
        p,
        attempted,
        satisfied,
        failed,
        unknown,
        errors,
        fraction_satisfied: fraction(satisfied, attempted),
        fraction_blocked: fraction(unknown, attempted),
        isogeny,
        rows,
    })
}
