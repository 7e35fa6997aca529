//! Embedded property-graph storage: labeled nodes, typed relationships,
//! label/type/identity indexes, stats, and line-delimited JSON snapshots.
//!
//! The store is append/merge-only. Nodes and relationships are never
//! deleted, so referential integrity cannot regress once established.
//! Concurrency contract: any number of concurrent readers OR a single
//! writer; callers serialize writes.

pub mod snapshot;
pub mod value;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::ontology::{canonical_value, IdentityKey, NodeLabel, RelationType};

pub use value::{PropertyValue, ScalarValue, ValueError};

/// Stable node identifier, assigned in creation order starting at 1.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, serde::Deserialize,
)]
#[serde(transparent)]
pub struct NodeId(pub u64);

/// Stable relationship identifier, assigned in creation order starting at 1.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, serde::Deserialize,
)]
#[serde(transparent)]
pub struct RelationshipId(pub u64);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for RelationshipId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type PropertyMap = BTreeMap<String, PropertyValue>;

#[derive(Debug, Clone, PartialEq)]
pub struct GraphNode {
    pub id: NodeId,
    pub label: NodeLabel,
    pub properties: PropertyMap,
}

impl GraphNode {
    pub fn property(&self, name: &str) -> Option<&PropertyValue> {
        self.properties.get(name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphRelationship {
    pub id: RelationshipId,
    pub rel_type: RelationType,
    pub source: NodeId,
    pub target: NodeId,
    pub properties: PropertyMap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Outgoing,
    Incoming,
    Both,
}

/// Per-label and per-type counts plus totals; totals always equal the sum
/// of their maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GraphStats {
    pub node_count_by_label: BTreeMap<NodeLabel, u64>,
    pub relationship_count_by_type: BTreeMap<RelationType, u64>,
    pub total_nodes: u64,
    pub total_relationships: u64,
}

impl GraphStats {
    pub fn label_count(&self, label: NodeLabel) -> u64 {
        self.node_count_by_label.get(&label).copied().unwrap_or(0)
    }

    pub fn relation_count(&self, rel_type: RelationType) -> u64 {
        self.relationship_count_by_type
            .get(&rel_type)
            .copied()
            .unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StoreError {
    #[error("node {0} does not exist")]
    MissingNode(NodeId),
    #[error("relationship endpoint {endpoint} does not exist")]
    MissingEndpoint { endpoint: NodeId },
    #[error("duplicate relationship ({rel_type}, {from}, {to})")]
    DuplicateRelationship {
        rel_type: RelationType,
        from: NodeId,
        to: NodeId,
    },
    #[error("property value is not storable: {0}")]
    Value(#[from] ValueError),
    #[error("mapped document references an entity it does not declare: {0}")]
    UnresolvedIdentity(String),
}

/// In-memory indexed property graph.
#[derive(Debug, Default, Clone)]
pub struct PropertyGraph {
    nodes: BTreeMap<NodeId, GraphNode>,
    relationships: BTreeMap<RelationshipId, GraphRelationship>,
    next_node_id: u64,
    next_relationship_id: u64,
    label_index: HashMap<NodeLabel, Vec<NodeId>>,
    type_index: HashMap<RelationType, Vec<RelationshipId>>,
    outgoing: HashMap<NodeId, Vec<RelationshipId>>,
    incoming: HashMap<NodeId, Vec<RelationshipId>>,
    triple_index: HashMap<(RelationType, NodeId, NodeId), RelationshipId>,
    // (label, identity property, canonical value) -> ids; populated only
    // for the identity properties of each label, serving MERGE lookups.
    identity_index: HashMap<(NodeLabel, &'static str, String), Vec<NodeId>>,
}

impl PropertyGraph {
    pub fn new() -> PropertyGraph {
        PropertyGraph::default()
    }

    pub fn node_count(&self) -> u64 {
        self.nodes.len() as u64
    }

    pub fn relationship_count(&self) -> u64 {
        self.relationships.len() as u64
    }

    pub fn node(&self, id: NodeId) -> Option<&GraphNode> {
        self.nodes.get(&id)
    }

    pub fn relationship(&self, id: RelationshipId) -> Option<&GraphRelationship> {
        self.relationships.get(&id)
    }

    /// All nodes in ascending id order.
    pub fn nodes(&self) -> impl Iterator<Item = &GraphNode> {
        self.nodes.values()
    }

    /// All relationships in ascending id order.
    pub fn relationships(&self) -> impl Iterator<Item = &GraphRelationship> {
        self.relationships.values()
    }

    pub fn create_node(
        &mut self,
        label: NodeLabel,
        properties: PropertyMap,
    ) -> Result<NodeId, StoreError> {
        for value in properties.values() {
            if !value.is_storable() {
                return Err(StoreError::Value(ValueError::NonFinite));
            }
        }
        self.next_node_id += 1;
        let id = NodeId(self.next_node_id);
        self.insert_node(GraphNode {
            id,
            label,
            properties,
        });
        Ok(id)
    }

    fn insert_node(&mut self, node: GraphNode) {
        let id = node.id;
        let label = node.label;
        self.label_index.entry(label).or_default().push(id);
        self.index_identity(&node);
        self.nodes.insert(id, node);
    }

    fn index_identity(&mut self, node: &GraphNode) {
        for name in node.label.identity_properties() {
            if let Some(value) = node.properties.get(*name) {
                self.identity_index
                    .entry((node.label, name, canonical_value(value)))
                    .or_default()
                    .push(node.id);
            }
        }
    }

    fn unindex_identity(&mut self, node: &GraphNode) {
        for name in node.label.identity_properties() {
            if let Some(value) = node.properties.get(*name) {
                if let Some(ids) = self
                    .identity_index
                    .get_mut(&(node.label, name, canonical_value(value)))
                {
                    ids.retain(|id| *id != node.id);
                }
            }
        }
    }

    /// Inserts or overwrites the given properties on an existing node,
    /// leaving properties it does not mention untouched.
    pub fn update_node_properties(
        &mut self,
        id: NodeId,
        properties: impl IntoIterator<Item = (String, PropertyValue)>,
    ) -> Result<(), StoreError> {
        let updates: Vec<(String, PropertyValue)> = properties.into_iter().collect();
        for (_, value) in &updates {
            if !value.is_storable() {
                return Err(StoreError::Value(ValueError::NonFinite));
            }
        }
        let node = self
            .nodes
            .get(&id)
            .ok_or(StoreError::MissingNode(id))?
            .clone();
        self.unindex_identity(&node);
        let node = self.nodes.get_mut(&id).expect("node present");
        for (name, value) in updates {
            node.properties.insert(name, value);
        }
        let node = node.clone();
        self.index_identity(&node);
        Ok(())
    }

    pub fn create_relationship(
        &mut self,
        rel_type: RelationType,
        source: NodeId,
        target: NodeId,
        properties: PropertyMap,
    ) -> Result<RelationshipId, StoreError> {
        if !self.nodes.contains_key(&source) {
            return Err(StoreError::MissingEndpoint { endpoint: source });
        }
        if !self.nodes.contains_key(&target) {
            return Err(StoreError::MissingEndpoint { endpoint: target });
        }
        if self.triple_index.contains_key(&(rel_type, source, target)) {
            return Err(StoreError::DuplicateRelationship {
                rel_type,
                from: source,
                to: target,
            });
        }
        for value in properties.values() {
            if !value.is_storable() {
                return Err(StoreError::Value(ValueError::NonFinite));
            }
        }
        self.next_relationship_id += 1;
        let id = RelationshipId(self.next_relationship_id);
        self.type_index.entry(rel_type).or_default().push(id);
        self.outgoing.entry(source).or_default().push(id);
        self.incoming.entry(target).or_default().push(id);
        self.triple_index.insert((rel_type, source, target), id);
        self.relationships.insert(
            id,
            GraphRelationship {
                id,
                rel_type,
                source,
                target,
                properties,
            },
        );
        Ok(id)
    }

    /// Looks up the relationship with the given (type, source, target)
    /// triple, if present.
    pub fn relationship_by_triple(
        &self,
        rel_type: RelationType,
        source: NodeId,
        target: NodeId,
    ) -> Option<RelationshipId> {
        self.triple_index.get(&(rel_type, source, target)).copied()
    }

    /// Nodes with the given label whose properties equal every filter
    /// value, ascending id order. Identity-property filters are answered
    /// from the identity index; remaining filters scan the label index.
    pub fn find_nodes(
        &self,
        label: NodeLabel,
        filters: &[(&str, PropertyValue)],
    ) -> Vec<&GraphNode> {
        let indexed = filters.iter().find_map(|(name, value)| {
            label
                .identity_properties()
                .iter()
                .find(|p| *p == name)
                .and_then(|p| self.identity_index.get(&(label, *p, canonical_value(value))))
        });
        let candidates: Vec<NodeId> = match indexed {
            Some(ids) => {
                let mut ids = ids.clone();
                ids.sort_unstable();
                ids
            }
            None => self.label_index.get(&label).cloned().unwrap_or_default(),
        };
        candidates
            .into_iter()
            .filter_map(|id| self.nodes.get(&id))
            .filter(|node| {
                node.label == label
                    && filters
                        .iter()
                        .all(|(name, value)| node.properties.get(*name) == Some(value))
            })
            .collect()
    }

    pub fn nodes_with_label(&self, label: NodeLabel) -> Vec<&GraphNode> {
        self.label_index
            .get(&label)
            .map(|ids| ids.iter().filter_map(|id| self.nodes.get(id)).collect())
            .unwrap_or_default()
    }

    pub fn label_cardinality(&self, label: NodeLabel) -> usize {
        self.label_index.get(&label).map_or(0, Vec::len)
    }

    /// The node whose identity key matches, when one exists. Raw
    /// `create_node` calls may produce several nodes with equal identity;
    /// the earliest id wins, matching merge behavior.
    pub fn find_by_identity(&self, key: &IdentityKey) -> Option<NodeId> {
        let label = key.label();
        let mut candidates: Option<Vec<NodeId>> = None;
        for (name, canonical) in key.properties() {
            let name: &'static str = label.identity_properties().iter().find(|p| **p == name)?;
            let ids = self.identity_index.get(&(label, name, canonical.clone()))?;
            candidates = Some(match candidates {
                None => ids.clone(),
                Some(prev) => prev.into_iter().filter(|id| ids.contains(id)).collect(),
            });
        }
        candidates.and_then(|ids| ids.into_iter().min())
    }

    /// Incident relationships of a node with the matching direction and
    /// optional type, each paired with the node on the far side. Ordered
    /// by relationship id; for `Both`, self-loops appear once per
    /// direction.
    pub fn neighbors(
        &self,
        id: NodeId,
        direction: Direction,
        rel_type: Option<RelationType>,
    ) -> Result<Vec<(&GraphRelationship, &GraphNode)>, StoreError> {
        if !self.nodes.contains_key(&id) {
            return Err(StoreError::MissingNode(id));
        }
        let mut result = Vec::new();
        if matches!(direction, Direction::Outgoing | Direction::Both) {
            if let Some(rel_ids) = self.outgoing.get(&id) {
                for rel_id in rel_ids {
                    let rel = &self.relationships[rel_id];
                    if rel_type.is_none_or(|t| t == rel.rel_type) {
                        result.push((rel, &self.nodes[&rel.target]));
                    }
                }
            }
        }
        if matches!(direction, Direction::Incoming | Direction::Both) {
            if let Some(rel_ids) = self.incoming.get(&id) {
                for rel_id in rel_ids {
                    let rel = &self.relationships[rel_id];
                    if rel_type.is_none_or(|t| t == rel.rel_type) {
                        result.push((rel, &self.nodes[&rel.source]));
                    }
                }
            }
        }
        result.sort_by_key(|(rel, _)| rel.id);
        Ok(result)
    }

    pub fn stats(&self) -> GraphStats {
        let mut node_count_by_label = BTreeMap::new();
        for node in self.nodes.values() {
            *node_count_by_label.entry(node.label).or_insert(0) += 1;
        }
        let mut relationship_count_by_type = BTreeMap::new();
        for rel in self.relationships.values() {
            *relationship_count_by_type.entry(rel.rel_type).or_insert(0) += 1;
        }
        GraphStats {
            total_nodes: self.nodes.len() as u64,
            total_relationships: self.relationships.len() as u64,
            node_count_by_label,
            relationship_count_by_type,
        }
    }

    pub(crate) fn restore_node(&mut self, node: GraphNode) -> Result<(), String> {
        if self.nodes.contains_key(&node.id) {
            return Err(format!("duplicate node id {}", node.id));
        }
        self.next_node_id = self.next_node_id.max(node.id.0);
        self.insert_node(node);
        Ok(())
    }

    pub(crate) fn restore_relationship(&mut self, rel: GraphRelationship) -> Result<(), String> {
        if self.relationships.contains_key(&rel.id) {
            return Err(format!("duplicate relationship id {}", rel.id));
        }
        if !self.nodes.contains_key(&rel.source) {
            return Err(format!("relationship source {} does not exist", rel.source));
        }
        if !self.nodes.contains_key(&rel.target) {
            return Err(format!("relationship target {} does not exist", rel.target));
        }
        if self
            .triple_index
            .contains_key(&(rel.rel_type, rel.source, rel.target))
        {
            return Err(format!(
                "duplicate relationship triple ({}, {}, {})",
                rel.rel_type, rel.source, rel.target
            ));
        }
        self.next_relationship_id = self.next_relationship_id.max(rel.id.0);
        self.type_index.entry(rel.rel_type).or_default().push(rel.id);
        self.outgoing.entry(rel.source).or_default().push(rel.id);
        self.incoming.entry(rel.target).or_default().push(rel.id);
        self.triple_index
            .insert((rel.rel_type, rel.source, rel.target), rel.id);
        self.relationships.insert(rel.id, rel);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn props(pairs: &[(&str, PropertyValue)]) -> PropertyMap {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect()
    }

    #[test]
    fn created_node_is_retrievable_and_indexed() {
        let mut g = PropertyGraph::new();
        let id = g
            .create_node(NodeLabel::Model, props(&[("name", PropertyValue::text("m1"))]))
            .unwrap();
        assert_eq!(g.node(id).unwrap().label, NodeLabel::Model);
        assert_eq!(g.stats().label_count(NodeLabel::Model), 1);
    }

    #[test]
    fn node_ids_are_distinct_and_monotone() {
        let mut g = PropertyGraph::new();
        let a = g.create_node(NodeLabel::Model, PropertyMap::new()).unwrap();
        let b = g.create_node(NodeLabel::Model, PropertyMap::new()).unwrap();
        assert!(a < b);
    }

    #[test]
    fn dangling_relationship_is_rejected() {
        let mut g = PropertyGraph::new();
        let a = g.create_node(NodeLabel::Model, PropertyMap::new()).unwrap();
        let err = g
            .create_relationship(RelationType::TrainedOn, a, NodeId(99), PropertyMap::new())
            .unwrap_err();
        assert_eq!(err, StoreError::MissingEndpoint { endpoint: NodeId(99) });
    }

    #[test]
    fn duplicate_triple_is_rejected() {
        let mut g = PropertyGraph::new();
        let a = g.create_node(NodeLabel::Model, PropertyMap::new()).unwrap();
        let b = g.create_node(NodeLabel::Dataset, PropertyMap::new()).unwrap();
        g.create_relationship(RelationType::TrainedOn, a, b, PropertyMap::new())
            .unwrap();
        let err = g
            .create_relationship(RelationType::TrainedOn, a, b, PropertyMap::new())
            .unwrap_err();
        assert!(matches!(err, StoreError::DuplicateRelationship { .. }));
    }

    #[test]
    fn find_nodes_filters_by_property() {
        let mut g = PropertyGraph::new();
        g.create_node(
            NodeLabel::Model,
            props(&[
                ("name", PropertyValue::text("a")),
                ("version", PropertyValue::text("1")),
            ]),
        )
        .unwrap();
        g.create_node(
            NodeLabel::Model,
            props(&[
                ("name", PropertyValue::text("b")),
                ("version", PropertyValue::text("1")),
            ]),
        )
        .unwrap();
        let hits = g.find_nodes(NodeLabel::Model, &[("name", PropertyValue::text("a"))]);
        assert_eq!(hits.len(), 1);
        assert_eq!(
            g.find_nodes(NodeLabel::Model, &[("name", PropertyValue::text("zz"))])
                .len(),
            0
        );
        assert_eq!(g.find_nodes(NodeLabel::Dataset, &[]).len(), 0);
    }

    #[test]
    fn neighbors_of_isolated_node_is_empty() {
        let mut g = PropertyGraph::new();
        let a = g.create_node(NodeLabel::Device, PropertyMap::new()).unwrap();
        assert!(g.neighbors(a, Direction::Both, None).unwrap().is_empty());
        assert!(g.neighbors(NodeId(7), Direction::Both, None).is_err());
    }

    #[test]
    fn neighbors_respects_direction_and_type() {
        let mut g = PropertyGraph::new();
        let m = g.create_node(NodeLabel::Model, PropertyMap::new()).unwrap();
        let d = g.create_node(NodeLabel::Dataset, PropertyMap::new()).unwrap();
        let s = g.create_node(NodeLabel::Service, PropertyMap::new()).unwrap();
        g.create_relationship(RelationType::TrainedOn, m, d, PropertyMap::new())
            .unwrap();
        g.create_relationship(RelationType::Provides, m, s, PropertyMap::new())
            .unwrap();
        let out = g.neighbors(m, Direction::Outgoing, None).unwrap();
        assert_eq!(out.len(), 2);
        let trained = g
            .neighbors(m, Direction::Outgoing, Some(RelationType::TrainedOn))
            .unwrap();
        assert_eq!(trained.len(), 1);
        assert_eq!(trained[0].1.id, d);
        let incoming = g.neighbors(d, Direction::Incoming, None).unwrap();
        assert_eq!(incoming.len(), 1);
        assert!(g.neighbors(d, Direction::Outgoing, None).unwrap().is_empty());
    }

    #[test]
    fn stats_on_empty_graph_is_all_zero() {
        let stats = PropertyGraph::new().stats();
        assert_eq!(stats.total_nodes, 0);
        assert_eq!(stats.total_relationships, 0);
        assert!(stats.node_count_by_label.is_empty());
    }

    #[test]
    fn identity_lookup_finds_merged_node() {
        let mut g = PropertyGraph::new();
        let id = g
            .create_node(
                NodeLabel::Model,
                props(&[
                    ("name", PropertyValue::text("my  model")),
                    ("version", PropertyValue::text("1.0")),
                ]),
            )
            .unwrap();
        let key = IdentityKey::new(NodeLabel::Model, ["my model", "1.0"]);
        assert_eq!(g.find_by_identity(&key), Some(id));
        let miss = IdentityKey::new(NodeLabel::Model, ["my model", "2.0"]);
        assert_eq!(g.find_by_identity(&miss), None);
    }

    #[test]
    fn update_overwrites_only_carried_keys() {
        let mut g = PropertyGraph::new();
        let id = g
            .create_node(
                NodeLabel::Model,
                props(&[
                    ("name", PropertyValue::text("m")),
                    ("sizeMB", PropertyValue::Float(4.0)),
                ]),
            )
            .unwrap();
        g.update_node_properties(id, [("sizeMB".to_string(), PropertyValue::Float(9.0))])
            .unwrap();
        let node = g.node(id).unwrap();
        assert_eq!(node.property("sizeMB"), Some(&PropertyValue::Float(9.0)));
        assert_eq!(node.property("name"), Some(&PropertyValue::text("m")));
    }

    #[test]
    fn non_finite_property_is_rejected() {
        let mut g = PropertyGraph::new();
        let err = g.create_node(
            NodeLabel::Model,
            props(&[("x", PropertyValue::Float(f64::NAN))]),
        );
        assert!(err.is_err());
    }
}
