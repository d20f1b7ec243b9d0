//! JSON encoding of big integers: plain numbers when they fit in an i64,
//! decimal strings otherwise.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub fn big_to_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

/// Integers as numbers or strings; non-integral rationals as "p/q" strings.
pub fn rational_to_value(x: &BigRational) -> Value {
    if x.is_integer() {
        big_to_value(&x.to_integer())
    } else {
        Value::String(format!("{}/{}", x.numer(), x.denom()))
    }
}

pub fn vec_to_value(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big_to_value).collect())
}

pub fn matrix_to_value(m: &[Vec<BigInt>]) -> Value {
    Value::Array(m.iter().map(|r| vec_to_value(r)).collect())
}

pub fn value_to_big(v: &Value) -> Result<BigInt, String> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(format!("expected an integer, got {n}"))
            }
        }
        Value::String(s) => s.trim().parse().map_err(|_| format!("expected an integer string, got {s:?}")),
        other => Err(format!("expected an integer, got {other}")),
    }
}

pub fn value_to_rational(v: &Value) -> Result<BigRational, String> {
    if let Value::String(s) = v {
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| format!("bad rational {s:?}"))?;
            let q: BigInt = q.trim().parse().map_err(|_| format!("bad rational {s:?}"))?;
            if q == BigInt::from(0) {
                return Err(format!("zero denominator in {s:?}"));
            }
            return Ok(BigRational::new(p, q));
        }
    }
    value_to_big(v).map(BigRational::from_integer)
}

pub fn value_to_vec(v: &Value) -> Result<Vec<BigInt>, String> {
    v.as_array().ok_or_else(|| format!("expected an array, got {v}"))?.iter().map(value_to_big).collect()
}

pub fn value_to_matrix(v: &Value) -> Result<Vec<Vec<BigInt>>, String> {
    v.as_array().ok_or_else(|| format!("expected an array of rows, got {v}"))?.iter().map(value_to_vec).collect()
}

pub struct BigJson<'a>(pub &'a BigInt);

impl Serialize for BigJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

pub struct IntVecJson<'a>(pub &'a [BigInt]);

impl Serialize for IntVecJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for x in self.0 {
            seq.serialize_element(&BigJson(x))?;
        }
        seq.end()
    }
}

pub struct IntMatrixJson<'a>(pub &'a [Vec<BigInt>]);

impl Serialize for IntMatrixJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for r in self.0 {
            seq.serialize_element(&IntVecJson(r))?;
        }
        seq.end()
    }
}

pub fn ser_big<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    BigJson(x).serialize(s)
}

pub fn ser_int_vec<S: Serializer>(x: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    IntVecJson(x).serialize(s)
}

pub fn ser_int_matrix<S: Serializer>(x: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    IntMatrixJson(x).serialize(s)
}

pub fn de_big<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    value_to_big(&Value::deserialize(d)?).map_err(de::Error::custom)
}

pub fn de_int_vec<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
    value_to_vec(&Value::deserialize(d)?).map_err(de::Error::custom)
}

pub fn de_int_matrix<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
    value_to_matrix(&Value::deserialize(d)?).map_err(de::Error::custom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_values_become_strings() {
        let small = BigInt::from(-42);
        let large: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(big_to_value(&small), Value::from(-42));
        assert_eq!(big_to_value(&large), Value::String(large.to_string()));
        assert_eq!(value_to_big(&big_to_value(&large)).unwrap(), large);
    }

    #[test]
    fn rationals() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(rational_to_value(&half), Value::String("1/2".into()));
        assert_eq!(value_to_rational(&Value::String("1/2".into())).unwrap(), half);
        assert!(value_to_rational(&Value::String("1/0".into())).is_err());
    }
}
