//! Metadata document model and validation.
//!
//! A document describes one trained model and always carries five
//! sections: basic, general, dataset, training, inference. Units are
//! fixed by the schema: energy in joules, carbon in grams CO2-equivalent,
//! latency in milliseconds, artifact sizes in megabytes, device memory in
//! gigabytes.

mod definition;
mod validate;

use std::collections::BTreeMap;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

pub use definition::{load_schema, SchemaDefinition};
pub use validate::{validate_document, validate_json};

use crate::store::value::ScalarValue;

/// Names of evaluation metrics the schema recognizes; the evaluation map
/// accepts further metric names beyond these.
pub const RECOGNIZED_METRICS: [&str; 4] = ["MAE", "MEDE", "RMSE", "R_squared"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelMetadataDocument {
    pub basic: BasicMetadata,
    pub general: GeneralInfo,
    pub dataset: DatasetInfo,
    pub training: TrainingRecord,
    pub inference: InferenceRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasicMetadata {
    pub name: String,
    pub version: String,
    pub date: NaiveDate,
    pub description: String,
    pub authors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneralInfo {
    #[serde(rename = "sizeMB")]
    pub size_mb: f64,
    pub architecture: String,
    #[serde(rename = "modelType")]
    pub model_type: String,
    pub explainability: String,
    pub service: String,
    #[serde(rename = "problemType")]
    pub problem_type: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetInfo {
    pub name: String,
    pub version: String,
    pub date: NaiveDate,
    #[serde(rename = "sizeMB")]
    pub size_mb: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SustainabilityRecord {
    /// Joules.
    #[serde(rename = "energyConsumption")]
    pub energy_consumption: f64,
    /// Grams CO2-equivalent.
    #[serde(rename = "carbonFootprint")]
    pub carbon_footprint: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeviceInfo {
    pub cpu: String,
    /// The literal "none" when no GPU was involved.
    pub gpu: String,
    /// Gigabytes.
    #[serde(rename = "memoryGB")]
    pub memory_gb: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainingRecord {
    #[serde(rename = "splitType")]
    pub split_type: String,
    pub optimizer: String,
    /// Scalar-valued only; nested structures are rejected by validation.
    pub hyperparameters: BTreeMap<String, ScalarValue>,
    /// Metric name to value; the recognized regression metrics plus any
    /// extension keys.
    pub evaluation: BTreeMap<String, f64>,
    pub sustainability: SustainabilityRecord,
    pub device: DeviceInfo,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InferenceRecord {
    /// Milliseconds per single-sample inference request.
    #[serde(rename = "latencyMs")]
    pub latency_ms: f64,
    /// Floating-point operations for one inference on a single input.
    #[serde(deserialize_with = "de_flops")]
    pub flops: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub accuracy: Option<f64>,
    pub sustainability: SustainabilityRecord,
    pub device: DeviceInfo,
}

// Accepts integral floats (e.g. 249.0) the way JSON-schema "integer" does.
fn de_flops<'de, D: serde::Deserializer<'de>>(deserializer: D) -> Result<u64, D::Error> {
    use serde::de::Error;
    let n = serde_json::Number::deserialize(deserializer)?;
    if let Some(v) = n.as_u64() {
        return Ok(v);
    }
    if let Some(f) = n.as_f64() {
        if f.fract() == 0.0 && f >= 0.0 && f <= u64::MAX as f64 {
            return Ok(f as u64);
        }
    }
    Err(D::Error::custom(format!("flops must be a nonnegative integer, got {}", n)))
}

/// One broken rule, located by its JSON path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    #[serde(rename = "jsonPath")]
    pub json_path: String,
    pub rule: String,
    pub message: String,
}

/// Outcome of validating one document. `valid` holds exactly when
/// `violations` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn from_violations(violations: Vec<Violation>) -> ValidationReport {
        ValidationReport {
            valid: violations.is_empty(),
            violations,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SchemaError {
    #[error("document failed validation with {} violation(s)", .0.violations.len())]
    Invalid(ValidationReport),
    #[error("validated document failed to deserialize: {0}")]
    Deserialize(String),
}

/// Parses raw JSON text into a typed document. Validation runs first;
/// callers that skip `validate_document` still get the full report on
/// failure.
pub fn parse_document(raw: &str) -> Result<ModelMetadataDocument, SchemaError> {
    let report = validate_document(raw);
    if !report.valid {
        return Err(SchemaError::Invalid(report));
    }
    serde_json::from_str(raw).map_err(|e| SchemaError::Deserialize(e.to_string()))
}

impl ModelMetadataDocument {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("document serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("document serializes")
    }

    pub fn to_pretty_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("document serializes");
        text.push('\n');
        text
    }
}
