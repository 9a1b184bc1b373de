use num_bigint::BigUint;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use super::bivariate::BivariateSeries;
use super::univariate::UnivariateSeries;
use super::SeriesError;
use crate::json::{int_to_value, uint_from_value};

#[derive(Serialize, Deserialize)]
struct Wire {
    p: u64,
    precision: u32,
    cap: usize,
    coeffs: Vec<Vec<Value>>,
}

fn index(v: &Value) -> Result<usize, SeriesError> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| SeriesError::Invalid(format!("bad index {v}")))
}

fn residue(v: &Value) -> Result<BigUint, SeriesError> {
    uint_from_value(v).map_err(SeriesError::Invalid)
}

impl BivariateSeries {
    /// `{p, precision, cap, coeffs: [[i, j, residue], ...]}`, nonzero entries only.
    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self.entries().into_iter().map(|(i, j, c)| json!([i, j, int_to_value(&c)])).collect();
        json!({"p": self.prime(), "precision": self.precision(), "cap": self.cap(), "coeffs": coeffs})
    }

    pub fn from_json(v: &Value) -> Result<Self, SeriesError> {
        let w: Wire = serde_json::from_value(v.clone()).map_err(|e| SeriesError::Invalid(e.to_string()))?;
        let mut s = Self::zero(w.p, w.precision, w.cap)?;
        for entry in &w.coeffs {
            let [i, j, c] = entry.as_slice() else {
                return Err(SeriesError::Invalid("entries must be [i, j, residue]".into()));
            };
            let (i, j) = (index(i)?, index(j)?);
            if i + j > w.cap {
                return Err(SeriesError::Invalid(format!("entry ({i},{j}) exceeds cap {}", w.cap)));
            }
            s.set_raw(i, j, residue(c)?);
        }
        Ok(s)
    }
}

impl UnivariateSeries {
    /// `{p, precision, cap, coeffs: [[i, residue], ...]}`, nonzero entries only.
    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self
            .residues()
            .iter()
            .enumerate()
            .filter(|(_, c)| c != &&BigUint::default())
            .map(|(i, c)| json!([i, int_to_value(c)]))
            .collect();
        json!({"p": self.prime(), "precision": self.precision(), "cap": self.cap(), "coeffs": coeffs})
    }

    pub fn from_json(v: &Value) -> Result<Self, SeriesError> {
        let w: Wire = serde_json::from_value(v.clone()).map_err(|e| SeriesError::Invalid(e.to_string()))?;
        let mut s = Self::zero(w.p, w.precision, w.cap)?;
        for entry in &w.coeffs {
            let [i, c] = entry.as_slice() else {
                return Err(SeriesError::Invalid("entries must be [i, residue]".into()));
            };
            let i = index(i)?;
            if i > w.cap {
                return Err(SeriesError::Invalid(format!("index {i} exceeds cap {}", w.cap)));
            }
            s.coeffs[i] = s.ring.reduce(residue(c)?);
        }
        Ok(s)
    }
}

impl Serialize for BivariateSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BivariateSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Self::from_json(&Value::deserialize(d)?).map_err(D::Error::custom)
    }
}

impl Serialize for UnivariateSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for UnivariateSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Self::from_json(&Value::deserialize(d)?).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bivariate_round_trip() {
        let f = BivariateSeries::from_i64_entries(37, 20, 4, &[(0, 0, -1), (1, 2, 5), (0, 1, 1)]).unwrap();
        let text = serde_json::to_string(&f).unwrap();
        let back: BivariateSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn string_residues_accepted() {
        let v = json!({"p": 5, "precision": 3, "cap": 2, "coeffs": [[0, 1, "124"]]});
        let f = BivariateSeries::from_json(&v).unwrap();
        assert_eq!(f.to_poly_string(), "-Y");
    }

    #[test]
    fn rejects_entries_past_cap() {
        let v = json!({"p": 5, "precision": 3, "cap": 2, "coeffs": [[2, 1, 1]]});
        assert!(BivariateSeries::from_json(&v).is_err());
        let u = json!({"p": 5, "precision": 3, "cap": 2, "coeffs": [[3, 1]]});
        assert!(UnivariateSeries::from_json(&u).is_err());
    }

    #[test]
    fn univariate_round_trip() {
        let h = UnivariateSeries::from_i64s(3, 6, 5, &[3, 0, -2, 1]).unwrap();
        let back = UnivariateSeries::from_json(&h.to_json()).unwrap();
        assert_eq!(back, h);
    }
}
