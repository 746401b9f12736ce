//! Extended non-negative reals used for box values and reservation values.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A box value: either a finite real or `+inf` (the box can never cover the scenario).
///
/// In JSON a finite value is a number and infinity is the string `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Value {
    Finite(f64),
    Infinite,
}

impl Value {
    pub const ZERO: Value = Value::Finite(0.0);

    pub fn is_finite(self) -> bool {
        matches!(self, Value::Finite(_))
    }

    pub fn as_finite(self) -> Option<f64> {
        match self {
            Value::Finite(x) => Some(x),
            Value::Infinite => None,
        }
    }

    /// Lossy view as an IEEE float (`Infinite` maps to `f64::INFINITY`).
    pub fn to_f64(self) -> f64 {
        match self {
            Value::Finite(x) => x,
            Value::Infinite => f64::INFINITY,
        }
    }

    pub fn min(self, other: Value) -> Value {
        if other < self {
            other
        } else {
            self
        }
    }

    /// `self <= other + tol`, treating two infinities as equal.
    pub fn le_tol(self, other: Value, tol: f64) -> bool {
        match (self, other) {
            (_, Value::Infinite) => true,
            (Value::Infinite, Value::Finite(_)) => false,
            (Value::Finite(a), Value::Finite(b)) => a <= b + tol,
        }
    }

    /// Total order; finite values are assumed not to be NaN.
    pub fn total_cmp(&self, other: &Value) -> Ordering {
        match (self, other) {
            (Value::Finite(a), Value::Finite(b)) => a.total_cmp(b),
            (Value::Finite(_), Value::Infinite) => Ordering::Less,
            (Value::Infinite, Value::Finite(_)) => Ordering::Greater,
            (Value::Infinite, Value::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Value) -> Option<Ordering> {
        match (self, other) {
            (Value::Finite(a), Value::Finite(b)) => a.partial_cmp(b),
            _ => Some(self.total_cmp(other)),
        }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        if x == f64::INFINITY {
            Value::Infinite
        } else {
            Value::Finite(x)
        }
    }
}

impl Add<f64> for Value {
    type Output = Value;

    fn add(self, rhs: f64) -> Value {
        match self {
            Value::Finite(x) => Value::Finite(x + rhs),
            Value::Infinite => Value::Infinite,
        }
    }
}

impl Add for Value {
    type Output = Value;

    fn add(self, rhs: Value) -> Value {
        match (self, rhs) {
            (Value::Finite(a), Value::Finite(b)) => Value::Finite(a + b),
            _ => Value::Infinite,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(x) => write!(f, "{x}"),
            Value::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match *self {
            Value::Finite(x) => serializer.serialize_f64(x),
            Value::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ValueVisitor;

        impl Visitor<'_> for ValueVisitor {
            type Value = Value;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or the string \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Value, E> {
                Ok(Value::from(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Value, E> {
                Ok(Value::Finite(v as f64))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Value, E> {
                Ok(Value::Finite(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Value, E> {
                match v {
                    "inf" | "+inf" => Ok(Value::Infinite),
                    _ => v
                        .parse::<f64>()
                        .map(Value::from)
                        .map_err(|_| E::custom(format!("invalid value {v:?}"))),
                }
            }
        }

        deserializer.deserialize_any(ValueVisitor)
    }
}
