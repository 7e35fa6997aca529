//! Export the graph for external tools: a Cypher MERGE script for graph
//! databases, DOT for Graphviz, GraphML for anything that reads XML.
//!
//! ```bash
//! cargo run -p mrm3 --example export_bridges
//! ```

use mrm3::fixtures;
use mrm3::interchange::{export_cypher, export_dot, export_graphml};
use mrm3::query::parse_merge_script;

fn main() {
    let (_, graph) = fixtures::reference_graph();

    let script = export_cypher(&graph);
    let parsed = parse_merge_script(&script).expect("exported script is valid");
    println!(
        "cypher script: {} node statements, {} relationship statements",
        parsed.node_statement_count(),
        parsed.relationship_statement_count()
    );
    for line in script.lines().take(5) {
        println!("  {}", line);
    }

    let dot = export_dot(&graph);
    println!("\ndot: {} lines, e.g.", dot.lines().count());
    for line in dot.lines().take(4) {
        println!("  {}", line);
    }

    let graphml = export_graphml(&graph);
    println!(
        "\ngraphml: {} bytes, {} node elements, {} edge elements",
        graphml.len(),
        graphml.matches("<node ").count(),
        graphml.matches("<edge ").count()
    );

    let dir = tempfile::tempdir().unwrap();
    for (name, text) in [
        ("kg.cypher", &script),
        ("kg.dot", &dot),
        ("kg.graphml", &graphml),
    ] {
        std::fs::write(dir.path().join(name), text).unwrap();
    }
    println!("\nwrote kg.cypher, kg.dot, kg.graphml to {}", dir.path().display());
}
