use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::IngestError;
use crate::arith::to_bigint;
use crate::curves::{bad_primes_data, conductor, minimal_model, mod2_image, Mod2Image, WeierstrassCurve};
use crate::json::{bigint, bigint_opt};

pub const SCHEMA_VERSION: u32 = 1;

/// A rational 3-isogeny given by the x-coordinate of a kernel point and the
/// codomain curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsogenyData {
    pub degree: u32,
    #[serde(with = "rational")]
    pub kernel_x: BigRational,
    pub codomain_ainvs: WeierstrassCurve,
}

/// Attested arithmetic data for one curve. Fields the tool cannot compute are
/// optional so that their absence stays visible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub schema: u32,
    pub label: String,
    pub ainvs: WeierstrassCurve,
    #[serde(with = "bigint")]
    pub conductor: BigInt,
    #[serde(default)]
    pub rank: Option<u32>,
    #[serde(default)]
    pub selmer_corank: Option<BTreeMap<u64, u32>>,
    #[serde(default)]
    pub regulator_unit: Option<BTreeMap<u64, bool>>,
    #[serde(default, with = "bigint_opt")]
    pub sha_order: Option<BigInt>,
    #[serde(default)]
    pub torsion: Vec<u64>,
    #[serde(default)]
    pub tamagawa: Option<BTreeMap<u64, u32>>,
    #[serde(default)]
    pub isogeny: Option<IsogenyData>,
    #[serde(default)]
    pub heegner_flag: Option<bool>,
    #[serde(default)]
    pub mod2_image: Option<Mod2Image>,
    /// dim_F3 Sel_3(E/Q), used as parity data for 3-isogeny Selmer ratios.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selmer3_dim: Option<u32>,
}

impl CurveRecord {
    /// Parses and validates a record.
    pub fn from_json_str(s: &str) -> Result<Self, IngestError> {
        let r: CurveRecord = serde_json::from_str(s).map_err(|e| IngestError::Parse(e.to_string()))?;
        r.validate()?;
        Ok(r)
    }

    /// Normalized form: pretty JSON with a trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("record serializes");
        s.push('\n');
        s
    }

    pub fn curve(&self) -> &WeierstrassCurve {
        &self.ainvs
    }

    pub fn key(&self) -> String {
        normalize_label(&self.label)
    }

    pub fn corank(&self, p: u64) -> Option<u32> {
        self.selmer_corank.as_ref()?.get(&p).copied()
    }

    pub fn regulator_is_unit(&self, p: u64) -> Option<bool> {
        self.regulator_unit.as_ref()?.get(&p).copied()
    }

    /// Checks the record against quantities computed from its a-invariants.
    /// Never alters the record.
    pub fn validate(&self) -> Result<(), IngestError> {
        if self.schema != SCHEMA_VERSION {
            return Err(IngestError::Schema(self.schema));
        }
        if self.label.trim().is_empty() {
            return Err(IngestError::Validation("empty label".into()));
        }
        let computed = to_bigint(&conductor(&self.ainvs));
        if computed != self.conductor {
            return Err(IngestError::Validation(format!(
                "{}: claimed conductor {} but computed {}",
                self.label, self.conductor, computed
            )));
        }
        if let Some(claimed) = &self.tamagawa {
            let local = bad_primes_data(&self.ainvs);
            let mut computed: BTreeMap<u64, u32> = BTreeMap::new();
            for ld in &local {
                let q: u64 =
                    ld.prime().try_into().map_err(|_| IngestError::Validation("bad prime too large".into()))?;
                computed.insert(q, ld.tamagawa);
            }
            for (q, c) in claimed {
                let got = computed.get(q).copied().unwrap_or(1);
                if got != *c {
                    return Err(IngestError::Validation(format!(
                        "{}: claimed Tamagawa number c_{q} = {c} but computed {got}",
                        self.label
                    )));
                }
            }
        }
        if let Some(claimed) = self.mod2_image {
            let got = mod2_image(&self.ainvs);
            if got != claimed {
                return Err(IngestError::Validation(format!(
                    "{}: claimed mod-2 image {claimed} but computed {got}",
                    self.label
                )));
            }
        }
        if let Some(sha) = &self.sha_order {
            if sha <= &BigInt::zero() {
                return Err(IngestError::Validation(format!("{}: sha_order must be positive", self.label)));
            }
        }
        if let Some(iso) = &self.isogeny {
            if iso.degree != 3 {
                return Err(IngestError::Validation(format!("{}: only 3-isogenies are supported", self.label)));
            }
            if !three_division_value(&self.ainvs, &iso.kernel_x).is_zero() {
                return Err(IngestError::Validation(format!(
                    "{}: kernel_x = {} is not a root of the 3-division polynomial",
                    self.label, iso.kernel_x
                )));
            }
            let codomain = conductor(&iso.codomain_ainvs);
            if to_bigint(&codomain) != self.conductor {
                return Err(IngestError::Validation(format!(
                    "{}: codomain conductor {} differs from {}",
                    self.label, codomain, self.conductor
                )));
            }
        }
        Ok(())
    }

    /// The minimal model of the curve.
    pub fn minimal_curve(&self) -> WeierstrassCurve {
        minimal_model(&self.ainvs)
    }
}

/// 3x^4 + b2 x^3 + 3 b4 x^2 + 3 b6 x + b8.
pub fn three_division_value(e: &WeierstrassCurve, x: &BigRational) -> BigRational {
    let inv = e.invariants();
    let c = |v: BigInt| BigRational::from_integer(v);
    let three = c(BigInt::from(3));
    (((&three * x + c(inv.b2)) * x + &three * c(inv.b4)) * x + &three * c(inv.b6)) * x + c(inv.b8)
}

/// Labels compare with dots removed and case kept, so "58.a1" and "58a1" agree.
pub fn normalize_label(label: &str) -> String {
    label.trim().chars().filter(|c| *c != '.').collect()
}

mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        if x.denom().is_one() {
            crate::json::bigint::serialize(x.numer(), s)
        } else {
            s.serialize_str(&format!("{}/{}", x.numer(), x.denom()))
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        parse(&v).map_err(serde::de::Error::custom)
    }

    fn parse(v: &serde_json::Value) -> Result<BigRational, String> {
        if let Some(s) = v.as_str() {
            if let Some((n, m)) = s.split_once('/') {
                let n: BigInt = n.trim().parse().map_err(|_| format!("bad rational {s:?}"))?;
                let m: BigInt = m.trim().parse().map_err(|_| format!("bad rational {s:?}"))?;
                if m.is_zero() {
                    return Err(format!("zero denominator in {s:?}"));
                }
                return Ok(BigRational::new(n, m));
            }
        }
        Ok(BigRational::from_integer(crate::json::int_from_value(v)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_normalization() {
        assert_eq!(normalize_label("58.a1"), "58a1");
        assert_eq!(normalize_label(" 1216.o3 "), "1216o3");
    }

    #[test]
    fn three_division_root() {
        let e = WeierstrassCurve::from_i64s([0, -1, 0, 3, -1]).unwrap();
        let one = BigRational::one();
        assert!(three_division_value(&e, &one).is_zero());
    }
}
