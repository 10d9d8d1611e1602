//! Serde adapters encoding arbitrary-precision integers as decimal strings.
//!
//! All on-disk JSON is bit-exact: integers never pass through floats. Output
//! is canonical (`BigInt::to_string`); input accepts anything
//! `BigInt::from_str` accepts.

use num_bigint::BigInt;
use std::str::FromStr;

pub fn parse_bigint(s: &str) -> crate::Result<BigInt> {
    BigInt::from_str(s.trim()).map_err(|e| crate::Error::parse(format!("bad integer {s:?}: {e}")))
}

/// `#[serde(with = "bigint_str")]` for a single `BigInt` field.
pub mod bigint_str {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(de)?;
        BigInt::from_str(&s).map_err(|e| de::Error::custom(format!("bad integer {s:?}: {e}")))
    }
}

/// `#[serde(with = "bigint_vec")]` for a `Vec<BigInt>` field.
pub mod bigint_vec {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<String>::deserialize(de)?;
        raw.into_iter()
            .map(|s| {
                BigInt::from_str(&s)
                    .map_err(|e| de::Error::custom(format!("bad integer {s:?}: {e}")))
            })
            .collect()
    }
}

/// `#[serde(with = "bigint_opt")]` for an `Option<BigInt>` field.
pub mod bigint_opt {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, ser: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => ser.serialize_some(&x.to_string()),
            None => ser.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Option<BigInt>, D::Error> {
        let raw = Option::<String>::deserialize(de)?;
        raw.map(|s| {
            BigInt::from_str(&s).map_err(|e| de::Error::custom(format!("bad integer {s:?}: {e}")))
        })
        .transpose()
    }
}
