//! Serde helpers spelling complex numbers as `{re, im}` objects and
//! integer-indexed coefficient maps with string keys (JSON object keys are
//! strings, and buffered deserialization inside tagged enums sees them as
//! such).

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;

#[derive(Serialize, Deserialize)]
struct ReIm {
    re: f64,
    im: f64,
}

impl From<&Complex64> for ReIm {
    fn from(v: &Complex64) -> Self {
        ReIm { re: v.re, im: v.im }
    }
}

impl From<ReIm> for Complex64 {
    fn from(v: ReIm) -> Self {
        Complex64::new(v.re, v.im)
    }
}

pub(crate) mod complex {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        ReIm::from(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        Ok(ReIm::deserialize(d)?.into())
    }
}

pub(crate) mod complex_opt {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(ReIm::from).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Complex64>, D::Error> {
        Ok(Option::<ReIm>::deserialize(d)?.map(Complex64::from))
    }
}

pub(crate) mod complex_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(ReIm::from))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        Ok(Vec::<ReIm>::deserialize(d)?
            .into_iter()
            .map(Complex64::from)
            .collect())
    }
}

pub(crate) mod complex_map {
    use super::*;

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<i32, Complex64>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        s.collect_map(map.iter().map(|(k, v)| (k.to_string(), ReIm::from(v))))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<i32, Complex64>, D::Error> {
        let raw = BTreeMap::<String, ReIm>::deserialize(d)?;
        let mut map = BTreeMap::new();
        for (key, value) in raw {
            let index: i32 = key
                .parse()
                .map_err(|_| D::Error::custom(format!("coefficient index `{key}` is not an integer")))?;
            map.insert(index, value.into());
        }
        Ok(map)
    }
}
