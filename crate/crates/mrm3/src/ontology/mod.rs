//! The metadata ontology: closed label and relation enumerations with
//! endpoint signatures, identity keys, and the document-to-graph mapping.

mod identity;
mod labels;
mod mapping;

pub use identity::{canonical_value, canonicalize, IdentityKey};
pub use labels::{NodeLabel, RelationType, UnknownName};
pub use mapping::{
    hyperparameter_signature, ingest_document, map_document, merge_into, IngestReport,
    MappedDocument, NodeSlot, RelationshipSlot,
};
