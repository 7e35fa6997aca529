use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Scalar payload: the only thing allowed inside property lists, and the
/// value type of document hyperparameter maps.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarValue {
    Bool(bool),
    Int(i64),
    Float(f64),
    Text(String),
}

impl ScalarValue {
    pub fn is_finite(&self) -> bool {
        match self {
            ScalarValue::Float(f) => f.is_finite(),
            _ => true,
        }
    }
}

impl fmt::Display for ScalarValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarValue::Bool(b) => write!(f, "{}", b),
            ScalarValue::Int(i) => write!(f, "{}", i),
            ScalarValue::Float(x) => f.write_str(&format_float(*x)),
            ScalarValue::Text(s) => f.write_str(s),
        }
    }
}

impl Serialize for ScalarValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ScalarValue::Bool(b) => serializer.serialize_bool(*b),
            ScalarValue::Int(i) => serializer.serialize_i64(*i),
            ScalarValue::Float(x) => serializer.serialize_f64(*x),
            ScalarValue::Text(s) => serializer.serialize_str(s),
        }
    }
}

impl<'de> Deserialize<'de> for ScalarValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        scalar_from_json(&value).map_err(D::Error::custom)
    }
}

/// A property value stored on a node or relationship. Numbers are finite;
/// lists hold scalars only, so values never nest.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum PropertyValue {
    #[default]
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Text(String),
    List(Vec<ScalarValue>),
}

impl PropertyValue {
    pub fn text(s: impl Into<String>) -> PropertyValue {
        PropertyValue::Text(s.into())
    }

    /// Float constructor that refuses NaN and infinities.
    pub fn float(f: f64) -> Result<PropertyValue, ValueError> {
        if f.is_finite() {
            Ok(PropertyValue::Float(f))
        } else {
            Err(ValueError::NonFinite)
        }
    }

    pub fn is_null(&self) -> bool {
        matches!(self, PropertyValue::Null)
    }

    /// True when the value satisfies the storage invariants (finite
    /// numbers, scalar-only lists). Lists are scalar by construction;
    /// this re-checks float finiteness inside them.
    pub fn is_storable(&self) -> bool {
        match self {
            PropertyValue::Float(f) => f.is_finite(),
            PropertyValue::List(items) => items.iter().all(ScalarValue::is_finite),
            _ => true,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            PropertyValue::Null => serde_json::Value::Null,
            PropertyValue::Bool(b) => serde_json::Value::Bool(*b),
            PropertyValue::Int(i) => serde_json::Value::from(*i),
            PropertyValue::Float(f) => serde_json::Value::from(*f),
            PropertyValue::Text(s) => serde_json::Value::from(s.as_str()),
            PropertyValue::List(items) => serde_json::Value::Array(
                items
                    .iter()
                    .map(|s| match s {
                        ScalarValue::Bool(b) => serde_json::Value::from(*b),
                        ScalarValue::Int(i) => serde_json::Value::from(*i),
                        ScalarValue::Float(f) => serde_json::Value::from(*f),
                        ScalarValue::Text(t) => serde_json::Value::from(t.as_str()),
                    })
                    .collect(),
            ),
        }
    }

    pub fn from_json(value: &serde_json::Value) -> Result<PropertyValue, ValueError> {
        match value {
            serde_json::Value::Null => Ok(PropertyValue::Null),
            serde_json::Value::Bool(b) => Ok(PropertyValue::Bool(*b)),
            serde_json::Value::Number(_) => match scalar_from_json(value)? {
                ScalarValue::Int(i) => Ok(PropertyValue::Int(i)),
                ScalarValue::Float(f) => Ok(PropertyValue::Float(f)),
                _ => unreachable!("number converts to a numeric scalar"),
            },
            serde_json::Value::String(s) => Ok(PropertyValue::Text(s.clone())),
            serde_json::Value::Array(items) => {
                let scalars = items
                    .iter()
                    .map(scalar_from_json)
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(PropertyValue::List(scalars))
            }
            serde_json::Value::Object(_) => Err(ValueError::Nested),
        }
    }
}

impl From<ScalarValue> for PropertyValue {
    fn from(s: ScalarValue) -> Self {
        match s {
            ScalarValue::Bool(b) => PropertyValue::Bool(b),
            ScalarValue::Int(i) => PropertyValue::Int(i),
            ScalarValue::Float(f) => PropertyValue::Float(f),
            ScalarValue::Text(t) => PropertyValue::Text(t),
        }
    }
}

impl fmt::Display for PropertyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropertyValue::Null => f.write_str("null"),
            PropertyValue::Bool(b) => write!(f, "{}", b),
            PropertyValue::Int(i) => write!(f, "{}", i),
            PropertyValue::Float(x) => f.write_str(&format_float(*x)),
            PropertyValue::Text(s) => f.write_str(s),
            PropertyValue::List(items) => {
                f.write_str("[")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    match item {
                        ScalarValue::Text(s) => write!(f, "{:?}", s)?,
                        other => write!(f, "{}", other)?,
                    }
                }
                f.write_str("]")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValueError {
    #[error("number is not finite")]
    NonFinite,
    #[error("nested structures are not storable property values")]
    Nested,
    #[error("integer does not fit a signed 64-bit value")]
    IntRange,
}

fn scalar_from_json(value: &serde_json::Value) -> Result<ScalarValue, ValueError> {
    match value {
        serde_json::Value::Bool(b) => Ok(ScalarValue::Bool(*b)),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(ScalarValue::Int(i))
            } else if let Some(f) = n.as_f64() {
                if f.is_finite() {
                    Ok(ScalarValue::Float(f))
                } else {
                    Err(ValueError::NonFinite)
                }
            } else {
                Err(ValueError::IntRange)
            }
        }
        serde_json::Value::String(s) => Ok(ScalarValue::Text(s.clone())),
        _ => Err(ValueError::Nested),
    }
}

/// Renders a float so that it stays recognizably a float: integral values
/// keep one fractional digit, everything else uses the shortest form that
/// parses back to the same number.
pub fn format_float(f: f64) -> String {
    if f.fract() == 0.0 && f.abs() < 1e15 {
        format!("{:.1}", f)
    } else {
        format!("{}", f)
    }
}
