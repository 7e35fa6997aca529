//! Snapshot persistence: UTF-8, line-delimited JSON.
//!
//! Record 1 is a header `{"formatVersion":1,"nodeCount":N,"relationshipCount":M}`,
//! followed by one record per node and then one per relationship, both in
//! ascending id order. Saves are atomic: the file is written to a
//! temporary in the destination directory and renamed into place.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{GraphNode, GraphRelationship, NodeId, PropertyGraph, RelationshipId};
use crate::ontology::{NodeLabel, RelationType};
use crate::store::value::PropertyValue;

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, thiserror::Error)]
pub enum SnapshotError {
    #[error("snapshot io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("snapshot line {line}: {message}")]
    Corrupt { line: usize, message: String },
}

fn corrupt(line: usize, message: impl Into<String>) -> SnapshotError {
    SnapshotError::Corrupt {
        line,
        message: message.into(),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct Header {
    format_version: u64,
    node_count: u64,
    relationship_count: u64,
}

#[derive(Serialize, Deserialize)]
struct NodeRecord {
    kind: String,
    id: u64,
    label: String,
    props: BTreeMap<String, serde_json::Value>,
}

#[derive(Serialize, Deserialize)]
struct RelRecord {
    kind: String,
    id: u64,
    #[serde(rename = "type")]
    rel_type: String,
    source: u64,
    target: u64,
    props: BTreeMap<String, serde_json::Value>,
}

fn props_to_json(props: &super::PropertyMap) -> BTreeMap<String, serde_json::Value> {
    props.iter().map(|(k, v)| (k.clone(), v.to_json())).collect()
}

fn props_from_json(
    line: usize,
    props: &BTreeMap<String, serde_json::Value>,
) -> Result<super::PropertyMap, SnapshotError> {
    props
        .iter()
        .map(|(k, v)| {
            PropertyValue::from_json(v)
                .map(|value| (k.clone(), value))
                .map_err(|e| corrupt(line, format!("property {:?}: {}", k, e)))
        })
        .collect()
}

/// Serializes the graph into the snapshot text.
pub fn to_string(graph: &PropertyGraph) -> String {
    let header = Header {
        format_version: FORMAT_VERSION,
        node_count: graph.node_count(),
        relationship_count: graph.relationship_count(),
    };
    let mut out = String::new();
    out.push_str(&serde_json::to_string(&header).expect("header serializes"));
    out.push('\n');
    for node in graph.nodes() {
        let record = NodeRecord {
            kind: "node".to_string(),
            id: node.id.0,
            label: node.label.as_str().to_string(),
            props: props_to_json(&node.properties),
        };
        out.push_str(&serde_json::to_string(&record).expect("node serializes"));
        out.push('\n');
    }
    for rel in graph.relationships() {
        let record = RelRecord {
            kind: "rel".to_string(),
            id: rel.id.0,
            rel_type: rel.rel_type.as_str().to_string(),
            source: rel.source.0,
            target: rel.target.0,
            props: props_to_json(&rel.properties),
        };
        out.push_str(&serde_json::to_string(&record).expect("rel serializes"));
        out.push('\n');
    }
    out
}

/// Writes the snapshot atomically: temp file in the destination directory,
/// then rename.
pub fn save(graph: &PropertyGraph, destination: &Path) -> Result<(), SnapshotError> {
    let dir = destination.parent().filter(|p| !p.as_os_str().is_empty());
    if let Some(dir) = dir {
        fs::create_dir_all(dir)?;
    }
    let mut tmp = tempfile::NamedTempFile::new_in(dir.unwrap_or(Path::new(".")))?;
    tmp.write_all(to_string(graph).as_bytes())?;
    tmp.flush()?;
    tmp.persist(destination).map_err(|e| e.error)?;
    Ok(())
}

/// Parses snapshot text into a graph, reporting the first bad line.
pub fn from_reader<R: BufRead>(reader: R) -> Result<PropertyGraph, SnapshotError> {
    let mut lines = reader.lines().enumerate();
    let (_, header_line) = lines
        .next()
        .ok_or_else(|| corrupt(1, "empty snapshot: header record missing"))?;
    let header_line = header_line?;
    let header: Header = serde_json::from_str(&header_line)
        .map_err(|e| corrupt(1, format!("bad header: {}", e)))?;
    if header.format_version != FORMAT_VERSION {
        return Err(corrupt(
            1,
            format!("unsupported format version {}", header.format_version),
        ));
    }

    let mut graph = PropertyGraph::new();
    let mut seen_rel = false;
    for (index, line) in lines {
        let line_no = index + 1;
        let line = line?;
        if line.trim().is_empty() {
            return Err(corrupt(line_no, "blank line inside snapshot"));
        }
        let probe: serde_json::Value = serde_json::from_str(&line)
            .map_err(|e| corrupt(line_no, format!("bad record: {}", e)))?;
        match probe.get("kind").and_then(|k| k.as_str()) {
            Some("node") => {
                if seen_rel {
                    return Err(corrupt(line_no, "node record after relationship records"));
                }
                let record: NodeRecord = serde_json::from_str(&line)
                    .map_err(|e| corrupt(line_no, format!("bad node record: {}", e)))?;
                let label: NodeLabel = record
                    .label
                    .parse()
                    .map_err(|e| corrupt(line_no, format!("{}", e)))?;
                let node = GraphNode {
                    id: NodeId(record.id),
                    label,
                    properties: props_from_json(line_no, &record.props)?,
                };
                graph
                    .restore_node(node)
                    .map_err(|message| corrupt(line_no, message))?;
            }
            Some("rel") => {
                seen_rel = true;
                let record: RelRecord = serde_json::from_str(&line)
                    .map_err(|e| corrupt(line_no, format!("bad relationship record: {}", e)))?;
                let rel_type: RelationType = record
                    .rel_type
                    .parse()
                    .map_err(|e| corrupt(line_no, format!("{}", e)))?;
                let rel = GraphRelationship {
                    id: RelationshipId(record.id),
                    rel_type,
                    source: NodeId(record.source),
                    target: NodeId(record.target),
                    properties: props_from_json(line_no, &record.props)?,
                };
                graph
                    .restore_relationship(rel)
                    .map_err(|message| corrupt(line_no, message))?;
            }
            Some(other) => {
                return Err(corrupt(line_no, format!("unknown record kind {:?}", other)))
            }
            None => return Err(corrupt(line_no, "record is missing its kind field")),
        }
    }

    let last_line = graph.node_count() + graph.relationship_count() + 1;
    if graph.node_count() != header.node_count {
        return Err(corrupt(
            last_line as usize,
            format!(
                "header announces {} nodes, snapshot holds {}",
                header.node_count,
                graph.node_count()
            ),
        ));
    }
    if graph.relationship_count() != header.relationship_count {
        return Err(corrupt(
            last_line as usize,
            format!(
                "header announces {} relationships, snapshot holds {}",
                header.relationship_count,
                graph.relationship_count()
            ),
        ));
    }
    Ok(graph)
}

pub fn load(source: &Path) -> Result<PropertyGraph, SnapshotError> {
    let file = fs::File::open(source)?;
    from_reader(BufReader::new(file))
}
