//! Serializers writing big integers as JSON numbers when they fit in `i64`
//! and as decimal strings otherwise.

use num_bigint::BigInt;
use serde::ser::SerializeSeq;
use serde::Serializer;

pub fn to_value(n: &BigInt) -> serde_json::Value {
    match i64::try_from(n) {
        Ok(x) => serde_json::Value::from(x),
        Err(_) => serde_json::Value::from(n.to_string()),
    }
}

pub fn big<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match i64::try_from(n) {
        Ok(x) => s.serialize_i64(x),
        Err(_) => s.serialize_str(&n.to_string()),
    }
}

pub fn big_vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for n in v {
        seq.serialize_element(&to_value(n))?;
    }
    seq.end()
}

pub fn big_matrix<S: Serializer>(m: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for row in m {
        let row: Vec<serde_json::Value> = row.iter().map(to_value).collect();
        seq.serialize_element(&row)?;
    }
    seq.end()
}
