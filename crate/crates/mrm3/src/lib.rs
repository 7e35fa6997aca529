//! Embedded knowledge-graph engine for machine-readable ML model metadata.
//!
//! The crate validates metadata documents against a fixed schema,
//! materializes them into an in-memory property graph following a closed
//! ontology, and answers selection queries (for example "lowest inference
//! energy meeting an accuracy bound") through a Cypher-compatible query
//! subset. Snapshots persist the graph as line-delimited JSON; export
//! bridges produce MERGE scripts for external graph databases plus DOT
//! and GraphML for visualization.
//!
//! Start with the runnable programs under `examples/`, or go straight to
//! the pieces:
//!
//! - [`schema`]: document model, validation, JSON-schema export
//! - [`ontology`]: labels, relation signatures, identity keys, MERGE ingest
//! - [`store`]: the property graph and its snapshots
//! - [`query`]: tokenizer, parser, executor, plans
//! - [`fixtures`]: deterministic reference corpus generator
//! - [`interchange`]: Cypher / DOT / GraphML exports
//! - [`app`]: the CLI and the HTTP service

pub mod app;
pub mod fixtures;
pub mod interchange;
pub mod ontology;
pub mod query;
pub mod schema;
pub mod store;

pub use ontology::{IdentityKey, IngestReport, NodeLabel, RelationType};
pub use query::{QueryAst, ResultTable};
pub use schema::{ModelMetadataDocument, SchemaDefinition, ValidationReport};
pub use store::{GraphNode, GraphRelationship, GraphStats, PropertyGraph, PropertyValue};
