//! JSON helpers for arbitrary-size integers: written as plain JSON numbers,
//! read back from numbers or decimal strings.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};
use serde_json::{Number, Value};

pub fn int_to_value<T: ToString>(x: &T) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("decimal integer"))
}

pub fn int_from_value(v: &Value) -> Result<BigInt, String> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        other => return Err(format!("expected an integer, found {other}")),
    };
    BigInt::from_str(&text).map_err(|_| format!("not an integer: {text}"))
}

pub fn uint_from_value(v: &Value) -> Result<BigUint, String> {
    int_from_value(v)?.to_biguint().ok_or_else(|| format!("expected a nonnegative integer, found {v}"))
}

pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&int_to_value(x), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let v = Value::deserialize(d)?;
        int_from_value(&v).map_err(D::Error::custom)
    }
}

pub mod bigint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Value> = xs.iter().map(int_to_value).collect();
        serde::Serialize::serialize(&v, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let v = Vec::<Value>::deserialize(d)?;
        v.iter().map(|x| int_from_value(x).map_err(D::Error::custom)).collect()
    }
}

pub mod bigint_opt {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => serde::Serialize::serialize(&int_to_value(x), s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        match Option::<Value>::deserialize(d)? {
            None | Some(Value::Null) => Ok(None),
            Some(v) => int_from_value(&v).map(Some).map_err(D::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_wide_integer() {
        let x = -BigInt::from(37u32).pow(20);
        let v = int_to_value(&x);
        assert_eq!(serde_json::to_string(&v).unwrap(), x.to_string());
        assert_eq!(int_from_value(&v).unwrap(), x);
        assert_eq!(int_from_value(&Value::String(x.to_string())).unwrap(), x);
        assert!(int_from_value(&Value::Bool(true)).is_err());
    }
}
