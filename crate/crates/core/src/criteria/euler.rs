use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::Serialize;

use super::verdict::{reduction_at, tamagawa_away_from, HypothesisStatus, Status};
use super::CriteriaError;
use crate::curves::torsion_p_trivial;
use crate::ingest::CurveRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EulerOutcome {
    Unit,
    NonUnit,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerCharReport {
    pub curve: String,
    pub p: u64,
    pub outcome: EulerOutcome,
    pub factors: Vec<HypothesisStatus>,
    /// mu = 0 and this lambda over Q_cyc, when the outcome is a unit.
    pub lambda: Option<u32>,
}

/// Decides whether the truncated Euler characteristic of the p-primary
/// Selmer group over Q_cyc is a p-adic unit, factor by factor.
pub fn euler_char_check(record: &CurveRecord, p: u64) -> Result<EulerCharReport, CriteriaError> {
    let e = record.minimal_curve();
    if !torsion_p_trivial(&e, p).is_trivial() {
        return Err(CriteriaError::Precondition(format!("E(Q)[{p}] = 0 is not certified")));
    }
    let (count, ap) = reduction_at(&e, p)?;
    if ap.rem_euclid(p as i64) == 0 {
        return Err(CriteriaError::Precondition(format!("reduction at {p} is supersingular (a_{p} = {ap})")));
    }

    let regulator = match (record.rank, record.regulator_is_unit(p)) {
        (Some(0), _) => HypothesisStatus::new("regulator", Status::IngestedPass, "rank 0"),
        (_, Some(u)) => HypothesisStatus::new(
            "regulator",
            Status::ingested(u),
            if u { "regulator unit" } else { "regulator non-unit" },
        ),
        (_, None) => HypothesisStatus::new("regulator", Status::Unknown, "no attested regulator flag"),
    };
    let sha = match &record.sha_order {
        Some(s) => {
            HypothesisStatus::new("sha", Status::ingested(!(s % BigInt::from(p)).is_zero()), format!("#Sha = {s}"))
        }
        None => HypothesisStatus::new("sha", Status::Unknown, "no attested Sha order"),
    };
    let prod = tamagawa_away_from(&e, p);
    let tamagawa = HypothesisStatus::new(
        "tamagawa",
        Status::computed(!(&prod % BigUint::from(p)).is_zero()),
        format!("prod_(l != {p}) c_l = {prod}"),
    );
    let reduction = HypothesisStatus::new(
        "reduction_count",
        Status::computed(count % p != 0),
        format!("#E(F_{p}) = {count}, a_{p} = {ap}"),
    );
    let factors = vec![regulator, sha, tamagawa, reduction];

    let outcome = if factors.iter().any(|f| f.status.is_fail()) {
        EulerOutcome::NonUnit
    } else if factors.iter().all(|f| f.status.is_pass()) {
        EulerOutcome::Unit
    } else {
        EulerOutcome::Unknown
    };
    let lambda = match outcome {
        EulerOutcome::Unit => record.corank(p).or(record.rank).filter(|&r| r <= 1),
        _ => None,
    };
    Ok(EulerCharReport { curve: record.label.clone(), p, outcome, factors, lambda })
}
