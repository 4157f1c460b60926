//! Serde adapters that keep big integers as decimal strings in JSON.
//!
//! Equation values overflow both u64 and the 53-bit mantissa of JSON
//! numbers, so every `BigUint` field crosses the wire as a string.

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serializer, de};

pub mod biguint_dec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let raw = String::deserialize(d)?;
        parse_biguint(&raw).map_err(de::Error::custom)
    }
}

pub mod biguint_dec_opt {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        let raw = Option::<String>::deserialize(d)?;
        raw.map(|r| parse_biguint(&r).map_err(de::Error::custom))
            .transpose()
    }
}

pub fn parse_biguint(raw: &str) -> Result<BigUint, String> {
    raw.parse::<BigUint>()
        .map_err(|_| format!("invalid non-negative integer literal: {raw:?}"))
}
