//! Document-to-graph mapping and MERGE (get-or-create) ingestion.
//!
//! Every valid document expands to the same entity template: one node per
//! ontology concept, with one or two Device slots depending on whether
//! training and inference ran on the same hardware. Identity keys decide
//! sharing across documents:
//!
//! | label             | identity properties                        |
//! |-------------------|--------------------------------------------|
//! | Model             | name, version                              |
//! | Dataset           | name, version                              |
//! | Service           | name                                       |
//! | ProblemType       | name                                       |
//! | ModelArchitecture | type                                       |
//! | ModelTraining     | modelName, modelVersion                    |
//! | ModelInference    | modelName, modelVersion                    |
//! | Parameters        | modelName, modelVersion                    |
//! | Hyperparameters   | signature (canonical sorted serialization) |
//! | Device            | cpu, gpu, memoryGB                         |

use serde::Serialize;

use super::identity::{canonicalize, IdentityKey};
use super::labels::{NodeLabel, RelationType};
use crate::schema::{DeviceInfo, ModelMetadataDocument};
use crate::store::value::{format_float, PropertyValue, ScalarValue};
use crate::store::{NodeId, PropertyGraph, PropertyMap, StoreError};

/// One node the mapping wants present in the graph.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSlot {
    pub key: IdentityKey,
    pub properties: PropertyMap,
}

/// One relationship the mapping wants present, endpoints named by key.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationshipSlot {
    pub rel_type: RelationType,
    pub source: IdentityKey,
    pub target: IdentityKey,
}

/// Output of [`map_document`]: the full entity template for one document.
#[derive(Debug, Clone, PartialEq)]
pub struct MappedDocument {
    pub nodes: Vec<NodeSlot>,
    pub relationships: Vec<RelationshipSlot>,
}

/// What one merge did: exact created/matched counts per kind, plus the id
/// of the document's Model node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IngestReport {
    pub nodes_created: u64,
    pub nodes_matched: u64,
    pub relationships_created: u64,
    pub relationships_matched: u64,
    pub model_node_id: NodeId,
}

fn text(value: &str) -> PropertyValue {
    PropertyValue::Text(value.to_string())
}

fn float(value: f64) -> PropertyValue {
    PropertyValue::Float(value)
}

fn props(pairs: Vec<(&str, PropertyValue)>) -> PropertyMap {
    pairs
        .into_iter()
        .map(|(name, value)| (name.to_string(), value))
        .collect()
}

fn device_key(device: &DeviceInfo) -> IdentityKey {
    IdentityKey::new(
        NodeLabel::Device,
        [
            device.cpu.as_str(),
            device.gpu.as_str(),
            &format_float(device.memory_gb),
        ],
    )
}

fn device_props(device: &DeviceInfo) -> PropertyMap {
    props(vec![
        ("cpu", text(&device.cpu)),
        ("gpu", text(&device.gpu)),
        ("memoryGB", float(device.memory_gb)),
    ])
}

/// Canonical sorted serialization of a hyperparameter map; value-equal
/// maps share one Hyperparameters node regardless of which model carried
/// them.
pub fn hyperparameter_signature(
    hyperparameters: &std::collections::BTreeMap<String, ScalarValue>,
) -> String {
    hyperparameters
        .iter()
        .map(|(name, value)| format!("{}={}", canonicalize(name), canonicalize(&value.to_string())))
        .collect::<Vec<_>>()
        .join(";")
}

/// Expands a valid document into its node and relationship template.
pub fn map_document(doc: &ModelMetadataDocument) -> MappedDocument {
    let model_name = doc.basic.name.as_str();
    let model_version = doc.basic.version.as_str();

    let model_key = IdentityKey::new(NodeLabel::Model, [model_name, model_version]);
    let dataset_key = IdentityKey::new(
        NodeLabel::Dataset,
        [doc.dataset.name.as_str(), doc.dataset.version.as_str()],
    );
    let service_key = IdentityKey::new(NodeLabel::Service, [doc.general.service.as_str()]);
    let problem_key = IdentityKey::new(NodeLabel::ProblemType, [doc.general.problem_type.as_str()]);
    let architecture_key = IdentityKey::new(
        NodeLabel::ModelArchitecture,
        [doc.general.architecture.as_str()],
    );
    let training_key = IdentityKey::new(NodeLabel::ModelTraining, [model_name, model_version]);
    let inference_key = IdentityKey::new(NodeLabel::ModelInference, [model_name, model_version]);
    let parameters_key = IdentityKey::new(NodeLabel::Parameters, [model_name, model_version]);
    let signature = hyperparameter_signature(&doc.training.hyperparameters);
    let hyper_key = IdentityKey::new(NodeLabel::Hyperparameters, [signature.as_str()]);
    let training_device_key = device_key(&doc.training.device);
    let inference_device_key = device_key(&doc.inference.device);

    let mut nodes = vec![
        NodeSlot {
            key: model_key.clone(),
            properties: props(vec![
                ("name", text(model_name)),
                ("version", text(model_version)),
                ("date", text(&doc.basic.date.format("%Y-%m-%d").to_string())),
                ("description", text(&doc.basic.description)),
                (
                    "authors",
                    PropertyValue::List(
                        doc.basic
                            .authors
                            .iter()
                            .map(|a| ScalarValue::Text(a.clone()))
                            .collect(),
                    ),
                ),
                ("sizeMB", float(doc.general.size_mb)),
                ("modelType", text(&doc.general.model_type)),
                ("explainability", text(&doc.general.explainability)),
            ]),
        },
        NodeSlot {
            key: dataset_key.clone(),
            properties: props(vec![
                ("name", text(&doc.dataset.name)),
                ("version", text(&doc.dataset.version)),
                ("date", text(&doc.dataset.date.format("%Y-%m-%d").to_string())),
                ("sizeMB", float(doc.dataset.size_mb)),
            ]),
        },
        NodeSlot {
            key: service_key.clone(),
            properties: props(vec![("name", text(&doc.general.service))]),
        },
        NodeSlot {
            key: problem_key.clone(),
            properties: props(vec![("name", text(&doc.general.problem_type))]),
        },
        NodeSlot {
            key: architecture_key.clone(),
            properties: props(vec![("type", text(&doc.general.architecture))]),
        },
        NodeSlot {
            key: training_key.clone(),
            properties: {
                let mut p = props(vec![
                    ("modelName", text(model_name)),
                    ("modelVersion", text(model_version)),
                    ("splitType", text(&doc.training.split_type)),
                    ("optimizer", text(&doc.training.optimizer)),
                    (
                        "energyConsumption",
                        float(doc.training.sustainability.energy_consumption),
                    ),
                    (
                        "carbonFootprint",
                        float(doc.training.sustainability.carbon_footprint),
                    ),
                ]);
                for (metric, value) in &doc.training.evaluation {
                    p.insert(metric.clone(), float(*value));
                }
                p
            },
        },
        NodeSlot {
            key: inference_key.clone(),
            properties: {
                let mut p = props(vec![
                    ("modelName", text(model_name)),
                    ("modelVersion", text(model_version)),
                    ("latencyMs", float(doc.inference.latency_ms)),
                    ("flops", PropertyValue::Int(doc.inference.flops as i64)),
                    (
                        "energyConsumption",
                        float(doc.inference.sustainability.energy_consumption),
                    ),
                    (
                        "carbonFootprint",
                        float(doc.inference.sustainability.carbon_footprint),
                    ),
                ]);
                if let Some(accuracy) = doc.inference.accuracy {
                    p.insert("accuracy".to_string(), float(accuracy));
                }
                p
            },
        },
        NodeSlot {
            key: parameters_key.clone(),
            properties: props(vec![
                ("modelName", text(model_name)),
                ("modelVersion", text(model_version)),
            ]),
        },
        NodeSlot {
            key: hyper_key.clone(),
            properties: {
                let mut p = props(vec![("signature", text(&signature))]);
                for (name, value) in &doc.training.hyperparameters {
                    p.insert(name.clone(), value.clone().into());
                }
                p
            },
        },
        NodeSlot {
            key: training_device_key.clone(),
            properties: device_props(&doc.training.device),
        },
    ];
    if inference_device_key != training_device_key {
        nodes.push(NodeSlot {
            key: inference_device_key.clone(),
            properties: device_props(&doc.inference.device),
        });
    }

    let relationships = vec![
        RelationshipSlot {
            rel_type: RelationType::TrainedOn,
            source: model_key.clone(),
            target: dataset_key,
        },
        RelationshipSlot {
            rel_type: RelationType::Provides,
            source: model_key.clone(),
            target: service_key.clone(),
        },
        RelationshipSlot {
            rel_type: RelationType::SolutionFor,
            source: service_key,
            target: problem_key,
        },
        RelationshipSlot {
            rel_type: RelationType::Utilizes,
            source: model_key.clone(),
            target: architecture_key,
        },
        RelationshipSlot {
            rel_type: RelationType::TrainsOn,
            source: model_key.clone(),
            target: training_key.clone(),
        },
        RelationshipSlot {
            rel_type: RelationType::InferenceOn,
            source: inference_key.clone(),
            target: model_key,
        },
        RelationshipSlot {
            rel_type: RelationType::RunsOn,
            source: training_key.clone(),
            target: training_device_key,
        },
        RelationshipSlot {
            rel_type: RelationType::RunsOn,
            source: inference_key,
            target: inference_device_key,
        },
        RelationshipSlot {
            rel_type: RelationType::ConfiguredWith,
            source: training_key,
            target: parameters_key.clone(),
        },
        RelationshipSlot {
            rel_type: RelationType::TunedWith,
            source: parameters_key,
            target: hyper_key,
        },
    ];

    MappedDocument {
        nodes,
        relationships,
    }
}

/// Merges a mapped document into the graph with get-or-create semantics.
///
/// Matched nodes have the incoming property values overwritten for the
/// keys the document carries (last writer wins); relationships are
/// deduplicated by (type, source, target). The merge applies atomically:
/// the template is checked before any write, so a failed call leaves the
/// graph untouched.
pub fn merge_into(
    graph: &mut PropertyGraph,
    mapped: &MappedDocument,
) -> Result<IngestReport, StoreError> {
    // Relationship endpoints must be declared node slots; checking up
    // front keeps partial ingests invisible.
    for rel in &mapped.relationships {
        for key in [&rel.source, &rel.target] {
            if !mapped.nodes.iter().any(|slot| &slot.key == key) {
                return Err(StoreError::UnresolvedIdentity(key.to_string()));
            }
        }
        debug_assert!(
            rel.rel_type.admits(rel.source.label(), rel.target.label()),
            "mapping produced a relationship outside its signature"
        );
    }

    let mut report = IngestReport {
        nodes_created: 0,
        nodes_matched: 0,
        relationships_created: 0,
        relationships_matched: 0,
        model_node_id: NodeId(0),
    };

    let mut resolve = Vec::with_capacity(mapped.nodes.len());
    for slot in &mapped.nodes {
        let id = match graph.find_by_identity(&slot.key) {
            Some(id) => {
                graph.update_node_properties(id, slot.properties.clone())?;
                report.nodes_matched += 1;
                id
            }
            None => {
                let id = graph.create_node(slot.key.label(), slot.properties.clone())?;
                report.nodes_created += 1;
                id
            }
        };
        if slot.key.label() == NodeLabel::Model {
            report.model_node_id = id;
        }
        resolve.push((slot.key.clone(), id));
    }

    let id_of = |key: &IdentityKey| {
        resolve
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, id)| *id)
            .expect("endpoint checked above")
    };

    for rel in &mapped.relationships {
        let source = id_of(&rel.source);
        let target = id_of(&rel.target);
        match graph.create_relationship(rel.rel_type, source, target, PropertyMap::new()) {
            Ok(_) => report.relationships_created += 1,
            Err(StoreError::DuplicateRelationship { .. }) => report.relationships_matched += 1,
            Err(other) => return Err(other),
        }
    }

    Ok(report)
}

/// Convenience: map and merge in one step.
pub fn ingest_document(
    graph: &mut PropertyGraph,
    doc: &ModelMetadataDocument,
) -> Result<IngestReport, StoreError> {
    merge_into(graph, &map_document(doc))
}
