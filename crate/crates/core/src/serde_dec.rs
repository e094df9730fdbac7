//! Decimal-string encoding for integers in JSON.
//!
//! Discriminants overflow 53-bit JSON consumers quickly, so every integer is
//! written as a string. Readers accept either a string or a bare JSON number.

use std::fmt::Display;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};

#[derive(Deserialize)]
#[serde(untagged)]
enum StrOrNum {
    Str(String),
    Int(i64),
    UInt(u64),
}

impl StrOrNum {
    fn into_string(self) -> String {
        match self {
            StrOrNum::Str(s) => s,
            StrOrNum::Int(v) => v.to_string(),
            StrOrNum::UInt(v) => v.to_string(),
        }
    }
}

pub fn parse<T: FromStr>(s: &str) -> Result<T, String>
where
    T::Err: Display,
{
    s.trim()
        .parse::<T>()
        .map_err(|e| format!("invalid integer {s:?}: {e}"))
}

pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
where
    T: FromStr,
    T::Err: Display,
    D: Deserializer<'de>,
{
    let raw = StrOrNum::deserialize(d)?;
    parse(&raw.into_string()).map_err(D::Error::custom)
}

pub mod vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<Vec<T>, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        let raw = Vec::<StrOrNum>::deserialize(d)?;
        raw.into_iter()
            .map(|r| parse(&r.into_string()).map_err(D::Error::custom))
            .collect()
    }
}
