//! Application layer: the CLI wrapping validate, ingest, stats, query
//! and export for batch use, and the HTTP service for programmatic
//! consumers. Both paths execute queries through the same library calls,
//! so identical query text over the same snapshot produces identical
//! tables.

mod cli;
pub mod http;
pub mod render;

pub use cli::cli_main;
pub use http::{router, serve, ServiceState};

/// Row cap applied to query output when the query itself has no LIMIT.
pub const DEFAULT_MAX_ROWS: usize = 10_000;

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("{0}")]
    Message(String),
    #[error(transparent)]
    Snapshot(#[from] crate::store::snapshot::SnapshotError),
    #[error(transparent)]
    Store(#[from] crate::store::StoreError),
    #[error(transparent)]
    Schema(#[from] crate::schema::SchemaError),
    #[error(transparent)]
    Fixture(#[from] crate::fixtures::FixtureError),
}
