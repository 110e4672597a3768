//! JSON encodings shared by the library types and the CLI.
//!
//! Exact rationals are written as `[num, den]` pairs; integers that do not
//! fit in an `i64` become decimal strings. Reading also accepts plain
//! integers and `"num/den"` strings.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::rational::{parse_rational, Rational};

pub fn int_value(i: &BigInt) -> Value {
    match i.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(i.to_string()),
    }
}

fn value_int(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

/// A rational encoded as a `[num, den]` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPair(pub Rational);

impl Serialize for QPair {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [int_value(self.0.numer()), int_value(self.0.denom())].serialize(s)
    }
}

impl<'de> Deserialize<'de> for QPair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        let pair = match &v {
            Value::Array(a) if a.len() == 2 => value_int(&a[0]).zip(value_int(&a[1])),
            Value::Number(_) => value_int(&v).map(|n| (n, BigInt::from(1))),
            Value::String(s) => {
                return parse_rational(s).map(QPair).map_err(de::Error::custom);
            }
            _ => None,
        };
        match pair {
            Some((_, den)) if den == BigInt::from(0) => Err(de::Error::custom("zero denominator")),
            Some((num, den)) => Ok(QPair(Rational::new(num, den))),
            None => Err(de::Error::custom("expected a [num, den] pair")),
        }
    }
}

pub fn qpair_vec(v: &[Rational]) -> Vec<QPair> {
    v.iter().cloned().map(QPair).collect()
}
