//! Document validation. All failures come back as data in the report;
//! nothing here panics or errors on malformed input.

use chrono::NaiveDate;
use serde_json::Value;

use super::definition::{FieldSpec, FieldType, ROOT_FIELDS};
use super::{ValidationReport, Violation};

/// Validates raw JSON text. A syntactically broken document yields a
/// single `syntax` violation at `$`.
pub fn validate_document(raw: &str) -> ValidationReport {
    match serde_json::from_str::<Value>(raw) {
        Ok(value) => validate_json(&value),
        Err(e) => ValidationReport::from_violations(vec![Violation {
            json_path: "$".to_string(),
            rule: "syntax".to_string(),
            message: format!("document is not valid JSON: {}", e),
        }]),
    }
}

/// Validates an already-parsed JSON value against the schema.
pub fn validate_json(value: &Value) -> ValidationReport {
    let mut violations = Vec::new();
    check_object(value, ROOT_FIELDS, "$", &mut violations);
    ValidationReport::from_violations(violations)
}

fn violation(out: &mut Vec<Violation>, path: &str, rule: &str, message: String) {
    out.push(Violation {
        json_path: path.to_string(),
        rule: rule.to_string(),
        message,
    });
}

fn type_name(value: &Value) -> &'static str {
    match value {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(_) => "number",
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}

/// Appends a map key to a JSON path, bracket-quoting keys that are not
/// identifier-shaped.
fn child_path(parent: &str, key: &str) -> String {
    let identifier_like = !key.is_empty()
        && key
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !key.starts_with(|c: char| c.is_ascii_digit());
    if identifier_like {
        format!("{}.{}", parent, key)
    } else {
        format!("{}['{}']", parent, key.replace('\'', "\\'"))
    }
}

fn check_object(value: &Value, fields: &[FieldSpec], path: &str, out: &mut Vec<Violation>) {
    let Some(map) = value.as_object() else {
        violation(
            out,
            path,
            "type",
            format!("expected object, found {}", type_name(value)),
        );
        return;
    };
    for spec in fields {
        match map.get(spec.name) {
            None if spec.required => violation(
                out,
                &child_path(path, spec.name),
                "required",
                format!("required field \"{}\" is missing", spec.name),
            ),
            None => {}
            Some(child) => check_field(child, spec, &child_path(path, spec.name), out),
        }
    }
    for key in map.keys() {
        if !fields.iter().any(|spec| spec.name == key) {
            violation(
                out,
                &child_path(path, key),
                "additionalProperties",
                format!("unknown field \"{}\"", key),
            );
        }
    }
}

fn check_field(value: &Value, spec: &FieldSpec, path: &str, out: &mut Vec<Violation>) {
    match spec.field_type {
        FieldType::Text { nonempty } => match value.as_str() {
            None => violation(
                out,
                path,
                "type",
                format!("expected string, found {}", type_name(value)),
            ),
            Some(s) if nonempty && s.is_empty() => {
                violation(out, path, "minLength", "string must not be empty".into())
            }
            Some(_) => {}
        },
        FieldType::Date => match value.as_str() {
            None => violation(
                out,
                path,
                "type",
                format!("expected string, found {}", type_name(value)),
            ),
            Some(s) => {
                if !is_iso_date(s) {
                    violation(
                        out,
                        path,
                        "format",
                        format!("\"{}\" is not a calendar date in YYYY-MM-DD form", s),
                    );
                }
            }
        },
        FieldType::Number { minimum } => match value.as_f64() {
            None => violation(
                out,
                path,
                "type",
                format!("expected number, found {}", type_name(value)),
            ),
            Some(n) => {
                if let Some(min) = minimum {
                    if n < min {
                        violation(
                            out,
                            path,
                            "minimum",
                            format!("value {} is below the minimum {}", n, min),
                        );
                    }
                }
            }
        },
        FieldType::Integer { minimum } => match integer_value(value) {
            None => violation(
                out,
                path,
                "type",
                format!("expected integer, found {}", describe_non_integer(value)),
            ),
            Some(n) => {
                if n < minimum as f64 {
                    violation(
                        out,
                        path,
                        "minimum",
                        format!("value {} is below the minimum {}", n, minimum),
                    );
                }
            }
        },
        FieldType::StringList => match value.as_array() {
            None => violation(
                out,
                path,
                "type",
                format!("expected array, found {}", type_name(value)),
            ),
            Some(items) => {
                for (i, item) in items.iter().enumerate() {
                    if !item.is_string() {
                        violation(
                            out,
                            &format!("{}[{}]", path, i),
                            "type",
                            format!("expected string, found {}", type_name(item)),
                        );
                    }
                }
            }
        },
        FieldType::ScalarMap => match value.as_object() {
            None => violation(
                out,
                path,
                "type",
                format!("expected object, found {}", type_name(value)),
            ),
            Some(map) => {
                for (key, item) in map {
                    if !matches!(item, Value::String(_) | Value::Number(_) | Value::Bool(_)) {
                        violation(
                            out,
                            &child_path(path, key),
                            "type",
                            format!(
                                "hyperparameter values must be scalar (string, number or boolean), found {}",
                                type_name(item)
                            ),
                        );
                    }
                }
            }
        },
        FieldType::MetricMap => match value.as_object() {
            None => violation(
                out,
                path,
                "type",
                format!("expected object, found {}", type_name(value)),
            ),
            Some(map) => {
                for (key, item) in map {
                    if !item.is_number() {
                        violation(
                            out,
                            &child_path(path, key),
                            "type",
                            format!("metric values must be numbers, found {}", type_name(item)),
                        );
                    }
                }
            }
        },
        FieldType::Object(children) => check_object(value, children, path, out),
    }
}

fn is_iso_date(s: &str) -> bool {
    let bytes = s.as_bytes();
    let shape_ok = bytes.len() == 10
        && bytes[4] == b'-'
        && bytes[7] == b'-'
        && [0, 1, 2, 3, 5, 6, 8, 9]
            .iter()
            .all(|&i| bytes[i].is_ascii_digit());
    shape_ok && NaiveDate::parse_from_str(s, "%Y-%m-%d").is_ok()
}

// Integer per JSON-schema semantics: integral floats count.
fn integer_value(value: &Value) -> Option<f64> {
    let n = value.as_f64()?;
    (n.fract() == 0.0).then_some(n)
}

fn describe_non_integer(value: &Value) -> String {
    if value.is_number() {
        format!("non-integral number {}", value)
    } else {
        type_name(value).to_string()
    }
}
