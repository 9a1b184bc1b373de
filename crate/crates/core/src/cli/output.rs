use std::fmt::Write as _;
use std::path::Path;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;
use serde_json::{json, Value};

use crate::criteria::{
    EulerCharReport, HypothesisStatus, LocalRatio, RowStatus, ScanReport, TInvariant, TZeroReport, Verdict,
};
use crate::curves::{LocalData, WeierstrassCurve};
use crate::ingest::CurveRecord;

pub struct Report {
    pub table: String,
    pub json: Value,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(table: String, json: Value) -> Self {
        Self { table, json, warnings: Vec::new() }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// Rounds to six decimal places, half away from zero.
pub fn decimal6(x: &BigRational) -> String {
    let scale = BigInt::from(1_000_000u32);
    let scaled = x.abs() * BigRational::from_integer(scale.clone());
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let rounded = if &r * 2u32 >= *scaled.denom() { q + 1u32 } else { q };
    let (int, frac) = rounded.div_rem(&scale);
    let sign = if x.is_negative() { "-" } else { "" };
    format!("{sign}{int}.{frac:0>6}")
}

fn hypothesis_table(hyps: &[HypothesisStatus]) -> String {
    let w = hyps.iter().map(|h| h.name.len()).max().unwrap_or(0);
    let mut s = String::new();
    for h in hyps {
        let _ = writeln!(s, "  {:<w$}  {:<13}  {}", h.name, h.status.to_string(), h.evidence);
    }
    s
}

pub fn verdict(v: &Verdict) -> Report {
    let mut s = String::new();
    let _ = writeln!(s, "curve {}  p = {}  d = {}", v.curve, v.p, v.d);
    let _ = writeln!(s, "twist {}{}", v.twist, v.twist_label.as_ref().map(|l| format!(" ({l})")).unwrap_or_default());
    s.push_str(&hypothesis_table(&v.hypotheses));
    let _ = writeln!(s, "lambda_cyc(K): {}", v.lambda_cyc_K.map(|l| l.to_string()).unwrap_or_else(|| "-".into()));
    let line = v.excluded_line.as_ref().map(|l| l.to_string()).unwrap_or_else(|| v.excluded_line_note.clone());
    let _ = writeln!(s, "excluded line: {line}");
    let _ = writeln!(s, "h10gen: {}", v.h10gen);
    Report::new(s, to_value(v))
}

pub fn euler(r: &EulerCharReport) -> Report {
    let mut s = String::new();
    let _ = writeln!(s, "curve {}  p = {}", r.curve, r.p);
    s.push_str(&hypothesis_table(&r.factors));
    let outcome = serde_json::to_value(r.outcome).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    let _ = writeln!(s, "euler characteristic: {outcome}");
    if let Some(l) = r.lambda {
        let _ = writeln!(s, "mu = 0, lambda = {l}");
    }
    Report::new(s, to_value(r))
}

pub fn sprimes(label: &str, k0: i64, p: u64, bound: u64, primes: &[u64], pre: &[HypothesisStatus]) -> Report {
    let list: Vec<String> = primes.iter().map(|q| q.to_string()).collect();
    let mut s = list.join(" ");
    s.push('\n');
    let json = json!({
        "curve": label,
        "k0": k0,
        "p": p,
        "bound": bound,
        "primes": primes,
        "preconditions": pre,
    });
    Report::new(s, json)
}

pub fn density(mode: &str, what: &str, value: &BigRational) -> Report {
    let dec = decimal6(value);
    let s = format!("{value} ~ {dec}  ({what})\n");
    let json = json!({ "mode": mode, "quantity": what, "value": value.to_string(), "decimal": dec });
    Report::new(s, json)
}

pub fn scan(r: &ScanReport) -> Report {
    let mut s = String::new();
    let _ = writeln!(s, "curve {}  p = {}", r.curve, r.p);
    for row in &r.rows {
        let status = match row.status {
            RowStatus::Satisfied => "satisfied",
            RowStatus::Failed => "failed",
            RowStatus::Unknown => "unknown",
            RowStatus::Error => "error",
        };
        let t = row.t.map(|t| format!("  t = {t}")).unwrap_or_default();
        let _ = writeln!(s, "  d = {:>6}  {:<9}{}  {}", row.d, status, t, row.note);
    }
    let frac = |x: &Option<BigRational>| x.as_ref().map(|f| format!("{f}")).unwrap_or_else(|| "-".into());
    let _ = writeln!(
        s,
        "attempted {}  satisfied {}  failed {}  unknown {}  errors {}",
        r.attempted, r.satisfied, r.failed, r.unknown, r.errors
    );
    let _ = writeln!(
        s,
        "fraction satisfied {}  fraction blocked {}",
        frac(&r.fraction_satisfied),
        frac(&r.fraction_blocked)
    );
    if let Some(iso) = &r.isogeny {
        let _ = writeln!(
            s,
            "t resolved for {}  in T_0 {}  empirical T_0 fraction {}  half {}",
            iso.resolved,
            iso.in_t0,
            frac(&iso.empirical_t0_fraction),
            frac(&iso.empirical_lower_bound)
        );
    }
    Report::new(s, to_value(r))
}

pub fn tzero(r: &TZeroReport) -> Report {
    let mut s = String::new();
    let _ = writeln!(s, "curve {}  conductor {}  good at 3: {}", r.curve, r.conductor, r.good_at_3);
    let _ = writeln!(
        s,
        "twist d = {}: {} -> {}{}",
        r.d,
        r.twist.domain,
        r.twist.codomain,
        r.twist_label.as_ref().map(|l| format!(" ({l})")).unwrap_or_default()
    );
    if let Some(sp) = r.three_in_k {
        let _ = writeln!(s, "3 in Q(sqrt({})): {}", r.d, format!("{sp:?}").to_lowercase());
    }
    for lr in &r.ratios {
        match lr {
            LocalRatio::Known(x) => {
                let _ = writeln!(s, "  c_{} = {}  (ord3 {})", x.place, x.value, x.ord3);
            }
            LocalRatio::Ambiguous { place, candidates } => {
                let c: Vec<String> = candidates.iter().map(|c| c.to_string()).collect();
                let _ = writeln!(s, "  c_{} in {{{}}}", place, c.join(", "));
            }
        }
    }
    let parity = r.selmer3_parity.map(|p| p.to_string()).unwrap_or_else(|| "-".into());
    let _ = writeln!(s, "Selmer parity: {parity}");
    match &r.t {
        TInvariant::Resolved { t, c, used_parity } => {
            let how = if *used_parity { " (by parity)" } else { "" };
            let _ = writeln!(s, "c = {c}, t = {t}{how}");
        }
        TInvariant::Unresolved { candidates, reason } => {
            let c: Vec<String> = candidates.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(s, "c in {{{}}}: unresolved, {reason}", c.join(", "));
        }
    }
    let member = match r.in_t0prime {
        Some(true) => "yes",
        Some(false) => "no",
        None => "unresolved",
    };
    let _ = writeln!(s, "in T_0': {member}");
    Report::new(s, to_value(r))
}

pub fn local(label: &str, m: &WeierstrassCurve, data: &[LocalData], n: &BigUint) -> Report {
    let mut s = String::new();
    let _ = writeln!(s, "{label}: minimal model {m}, conductor {n}");
    for ld in data {
        let red =
            serde_json::to_value(ld.reduction).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        let _ = writeln!(
            s,
            "  {:>6}  {:<8} {:<24} f = {}  c = {}  v(disc) = {}",
            ld.prime(),
            ld.kodaira.to_string(),
            red,
            ld.conductor_exponent,
            ld.tamagawa,
            ld.discriminant_valuation
        );
    }
    let json = json!({ "label": label, "minimal_model": m, "conductor": n.to_string(), "local": data });
    Report::new(s, json)
}

pub fn fetched(r: &CurveRecord, path: &Path) -> Report {
    let s = format!("{} -> {}\n", r.label, path.display());
    let json = json!({ "label": r.label, "path": path.display().to_string(), "record": r });
    Report::new(s, json)
}
