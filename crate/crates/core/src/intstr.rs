//! Serde helpers rendering big integers as decimal strings, so JSON output
//! survives values beyond 2^53 and round-trips exactly.

use crate::coeff::Int;
use serde::{de::Error as _, Deserialize, Deserializer, Serializer};
use std::str::FromStr;

pub fn serialize<S: Serializer>(v: &Int, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
    let raw = String::deserialize(d)?;
    Int::from_str(&raw).map_err(D::Error::custom)
}

pub mod vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| Int::from_str(s).map_err(D::Error::custom))
            .collect()
    }
}

pub mod vec2 {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::Serialize;

    pub fn serialize<S: Serializer>(v: &[Vec<Int>], s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row<'a>(#[serde(with = "super::vec")] &'a [Int]);
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for row in v {
            seq.serialize_element(&Row(row))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Int>>, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        raw.iter()
            .map(|row| {
                row.iter()
                    .map(|s| Int::from_str(s).map_err(D::Error::custom))
                    .collect()
            })
            .collect()
    }
}

pub mod opt {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Int>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.serialize_some(&x.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Int>, D::Error> {
        let raw = Option::<String>::deserialize(d)?;
        raw.map(|s| Int::from_str(&s).map_err(D::Error::custom))
            .transpose()
    }
}
