//! Materialize documents into the property graph and inspect the result:
//! MERGE semantics, ingest reports, per-label stats.
//!
//! ```bash
//! cargo run -p mrm3 --example build_graph
//! ```

use mrm3::fixtures::{self, FixtureConfig};
use mrm3::ontology::{ingest_document, map_document};
use mrm3::store::PropertyGraph;

fn main() {
    let documents = fixtures::generate(&FixtureConfig::default()).unwrap();

    // every document expands to the same entity template
    let mapped = map_document(&documents[0]);
    println!(
        "one document maps to {} node slots and {} relationship slots:",
        mapped.nodes.len(),
        mapped.relationships.len()
    );
    for slot in &mapped.nodes {
        println!("  {}", slot.key);
    }

    let mut graph = PropertyGraph::new();
    let first = ingest_document(&mut graph, &documents[0]).unwrap();
    println!(
        "\nfirst ingest: created {} nodes, {} relationships",
        first.nodes_created, first.relationships_created
    );

    // merging the same document again matches everything
    let again = ingest_document(&mut graph, &documents[0]).unwrap();
    println!(
        "same document again: created {} nodes, matched {}",
        again.nodes_created, again.nodes_matched
    );

    for doc in &documents[1..] {
        ingest_document(&mut graph, doc).unwrap();
    }
    let stats = graph.stats();
    println!(
        "\nfull corpus: {} nodes, {} relationships",
        stats.total_nodes, stats.total_relationships
    );
    for (label, count) in &stats.node_count_by_label {
        println!("  {:<20} {:>4}", label.to_string(), count);
    }
    for (rel_type, count) in &stats.relationship_count_by_type {
        println!("  {:<20} {:>4}", rel_type.to_string(), count);
    }
}
