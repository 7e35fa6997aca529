//! The machine-readable schema definition.
//!
//! One static field table drives everything that must agree: the
//! validator's traversal, the exported JSON-schema document (draft
//! 2020-12), and the enumeration of required paths used by tests.

use serde_json::{json, Value};

#[derive(Debug, Clone, Copy)]
pub(crate) enum FieldType {
    Text { nonempty: bool },
    Date,
    Number { minimum: Option<f64> },
    Integer { minimum: i64 },
    StringList,
    /// Open map of scalar values (string | number | boolean).
    ScalarMap,
    /// Open map of finite numbers keyed by metric name.
    MetricMap,
    Object(&'static [FieldSpec]),
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct FieldSpec {
    pub name: &'static str,
    pub field_type: FieldType,
    pub required: bool,
    pub description: &'static str,
    pub unit: Option<&'static str>,
}

const fn field(name: &'static str, field_type: FieldType, description: &'static str) -> FieldSpec {
    FieldSpec {
        name,
        field_type,
        required: true,
        description,
        unit: None,
    }
}

const fn with_unit(mut spec: FieldSpec, unit: &'static str) -> FieldSpec {
    spec.unit = Some(unit);
    spec
}

const fn optional(mut spec: FieldSpec) -> FieldSpec {
    spec.required = false;
    spec
}

const NONEMPTY: FieldType = FieldType::Text { nonempty: true };
const TEXT: FieldType = FieldType::Text { nonempty: false };
const NONNEG: FieldType = FieldType::Number { minimum: Some(0.0) };

pub(crate) const BASIC_FIELDS: &[FieldSpec] = &[
    field("name", NONEMPTY, "Model name; identifies the model together with its version."),
    field("version", NONEMPTY, "Model version; identifies the model together with its name."),
    field("date", FieldType::Date, "Calendar date the model was produced (ISO 8601, YYYY-MM-DD)."),
    field("description", TEXT, "Free-form description of the model."),
    field("authors", FieldType::StringList, "People or systems that produced the model."),
];

pub(crate) const GENERAL_FIELDS: &[FieldSpec] = &[
    with_unit(
        field("sizeMB", NONNEG, "Size of the serialized model artifact. Unit: megabytes."),
        "MB",
    ),
    field("architecture", NONEMPTY, "Model architecture, e.g. \"Random Forest\"."),
    field("modelType", TEXT, "Kind of model, e.g. \"supervised\"."),
    field("explainability", TEXT, "How the model's decisions can be explained."),
    field("service", NONEMPTY, "Service the model was built for, e.g. \"localization\"."),
    field("problemType", NONEMPTY, "ML problem class, e.g. \"regression\"."),
];

pub(crate) const DATASET_FIELDS: &[FieldSpec] = &[
    field("name", NONEMPTY, "Dataset name; identifies the dataset together with its version."),
    field("version", TEXT, "Dataset version; identifies the dataset together with its name."),
    field("date", FieldType::Date, "Dataset release or collection date (ISO 8601, YYYY-MM-DD)."),
    with_unit(field("sizeMB", NONNEG, "Dataset size. Unit: megabytes."), "MB"),
];

pub(crate) const SUSTAINABILITY_FIELDS: &[FieldSpec] = &[
    with_unit(
        field("energyConsumption", NONNEG, "Energy consumed. Unit: joules."),
        "J",
    ),
    with_unit(
        field("carbonFootprint", NONNEG, "Carbon footprint. Unit: grams CO2-equivalent."),
        "gCO2eq",
    ),
];

pub(crate) const DEVICE_FIELDS: &[FieldSpec] = &[
    field("cpu", NONEMPTY, "CPU of the device."),
    field("gpu", TEXT, "GPU of the device, or the literal \"none\"."),
    with_unit(
        field("memoryGB", NONNEG, "Installed memory. Unit: gigabytes."),
        "GB",
    ),
];

pub(crate) const TRAINING_FIELDS: &[FieldSpec] = &[
    field("splitType", TEXT, "Train/test split strategy, e.g. \"80/20 holdout\"."),
    field("optimizer", TEXT, "Optimizer used during training, or \"none\"."),
    field(
        "hyperparameters",
        FieldType::ScalarMap,
        "Hyperparameters the model was trained with; scalar values only.",
    ),
    field(
        "evaluation",
        FieldType::MetricMap,
        "Evaluation metrics by name. Recognized keys: MAE, MEDE, RMSE, R_squared; further metrics are allowed.",
    ),
    field(
        "sustainability",
        FieldType::Object(SUSTAINABILITY_FIELDS),
        "Environmental cost of the training run.",
    ),
    field(
        "device",
        FieldType::Object(DEVICE_FIELDS),
        "Device the model was trained on.",
    ),
];

pub(crate) const INFERENCE_FIELDS: &[FieldSpec] = &[
    with_unit(
        field(
            "latencyMs",
            NONNEG,
            "End-to-end latency of one inference request on a single input sample. Unit: milliseconds.",
        ),
        "ms",
    ),
    field(
        "flops",
        FieldType::Integer { minimum: 0 },
        "Floating-point operations for one inference on a single input sample.",
    ),
    optional(field(
        "accuracy",
        FieldType::Number { minimum: None },
        "Accuracy on the evaluation set, when the problem type reports one.",
    )),
    field(
        "sustainability",
        FieldType::Object(SUSTAINABILITY_FIELDS),
        "Environmental cost of one inference request.",
    ),
    field(
        "device",
        FieldType::Object(DEVICE_FIELDS),
        "Device the inference measurements were taken on.",
    ),
];

pub(crate) const ROOT_FIELDS: &[FieldSpec] = &[
    field(
        "basic",
        FieldType::Object(BASIC_FIELDS),
        "Identity of the model: name, version, date, description, authors.",
    ),
    field(
        "general",
        FieldType::Object(GENERAL_FIELDS),
        "General information: size, architecture, intended service, problem type.",
    ),
    field(
        "dataset",
        FieldType::Object(DATASET_FIELDS),
        "The dataset the model was trained on.",
    ),
    field(
        "training",
        FieldType::Object(TRAINING_FIELDS),
        "How the model was trained and how it evaluated.",
    ),
    field(
        "inference",
        FieldType::Object(INFERENCE_FIELDS),
        "Cost and behavior of the model in prediction mode.",
    ),
];

/// The built-in schema, exportable as a standard JSON-schema document.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemaDefinition {
    json: Value,
}

/// Returns the built-in schema definition. Deterministic: every call
/// yields an identical definition.
pub fn load_schema() -> SchemaDefinition {
    SchemaDefinition {
        json: object_schema(
            ROOT_FIELDS,
            Some(json!({
                "$schema": "https://json-schema.org/draft/2020-12/schema",
                "$id": "urn:mrm3:schema:model-metadata:1",
                "title": "Model metadata document",
                "description": "Machine-readable metadata record for one trained ML model. Units are fixed: energy in joules, carbon in grams CO2-equivalent, latency in milliseconds, sizes in megabytes, device memory in gigabytes.",
            })),
        ),
    }
}

impl SchemaDefinition {
    pub fn as_json(&self) -> &Value {
        &self.json
    }

    /// The exported JSON-schema file content.
    pub fn to_pretty_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.json).expect("schema serializes");
        text.push('\n');
        text
    }

    /// Top-level section names, in schema order.
    pub fn section_names(&self) -> Vec<&str> {
        self.json["properties"]
            .as_object()
            .map(|m| m.keys().map(String::as_str).collect())
            .unwrap_or_default()
    }

    /// Whether the dotted path (e.g. "training.sustainability.energyConsumption")
    /// names a required field.
    pub fn requires(&self, dotted_path: &str) -> bool {
        let mut node = &self.json;
        let mut segments = dotted_path.split('.').peekable();
        while let Some(segment) = segments.next() {
            let required = node["required"]
                .as_array()
                .is_some_and(|r| r.iter().any(|v| v == segment));
            if !required {
                return false;
            }
            if segments.peek().is_none() {
                return true;
            }
            node = &node["properties"][segment];
        }
        false
    }

    /// Every required field path, in schema order, as JSON paths rooted
    /// at `$`.
    pub fn required_paths(&self) -> Vec<String> {
        let mut paths = Vec::new();
        collect_required(ROOT_FIELDS, "$", &mut paths);
        paths
    }
}

fn collect_required(fields: &[FieldSpec], prefix: &str, out: &mut Vec<String>) {
    for spec in fields {
        if !spec.required {
            continue;
        }
        let path = format!("{}.{}", prefix, spec.name);
        out.push(path.clone());
        if let FieldType::Object(children) = spec.field_type {
            collect_required(children, &path, out);
        }
    }
}

fn object_schema(fields: &[FieldSpec], envelope: Option<Value>) -> Value {
    let mut properties = serde_json::Map::new();
    let mut required = Vec::new();
    for spec in fields {
        properties.insert(spec.name.to_string(), field_schema(spec));
        if spec.required {
            required.push(Value::from(spec.name));
        }
    }
    let mut schema = match envelope {
        Some(Value::Object(map)) => map,
        _ => serde_json::Map::new(),
    };
    schema.insert("type".into(), json!("object"));
    schema.insert("properties".into(), Value::Object(properties));
    schema.insert("required".into(), Value::Array(required));
    schema.insert("additionalProperties".into(), json!(false));
    Value::Object(schema)
}

fn field_schema(spec: &FieldSpec) -> Value {
    let mut schema = match spec.field_type {
        FieldType::Text { nonempty } => {
            let mut s = json!({"type": "string"});
            if nonempty {
                s["minLength"] = json!(1);
            }
            s
        }
        FieldType::Date => json!({"type": "string", "format": "date"}),
        FieldType::Number { minimum } => {
            let mut s = json!({"type": "number"});
            if let Some(min) = minimum {
                s["minimum"] = json!(min);
            }
            s
        }
        FieldType::Integer { minimum } => json!({"type": "integer", "minimum": minimum}),
        FieldType::StringList => json!({"type": "array", "items": {"type": "string"}}),
        FieldType::ScalarMap => json!({
            "type": "object",
            "additionalProperties": {"type": ["string", "number", "boolean"]}
        }),
        FieldType::MetricMap => json!({
            "type": "object",
            "additionalProperties": {"type": "number"}
        }),
        FieldType::Object(children) => object_schema(children, None),
    };
    if let Value::Object(map) = &mut schema {
        map.insert("description".into(), json!(spec.description));
        if let Some(unit) = spec.unit {
            map.insert("unit".into(), json!(unit));
        }
    }
    schema
}
