//! Persist a graph to a line-delimited JSON snapshot and load it back.
//!
//! ```bash
//! cargo run -p mrm3 --example snapshot_persistence
//! ```

use mrm3::fixtures;
use mrm3::store::snapshot;

fn main() {
    let (_, graph) = fixtures::reference_graph();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kg.snapshot");

    snapshot::save(&graph, &path).unwrap();
    let size = std::fs::metadata(&path).unwrap().len();
    println!("saved {} ({} bytes)", path.display(), size);

    let text = std::fs::read_to_string(&path).unwrap();
    println!("\nfirst three records:");
    for line in text.lines().take(3) {
        println!("  {}", line);
    }

    let loaded = snapshot::load(&path).unwrap();
    assert_eq!(loaded.stats(), graph.stats());
    println!(
        "\nreloaded: {} nodes, {} relationships, stats identical",
        loaded.node_count(),
        loaded.relationship_count()
    );

    // a truncated snapshot names the first bad line
    let truncated = dir.path().join("broken.snapshot");
    let upto = text.lines().take(40).collect::<Vec<_>>().join("\n") + "\n";
    std::fs::write(&truncated, upto).unwrap();
    match snapshot::load(&truncated) {
        Err(e) => println!("\ntruncated copy refused: {}", e),
        Ok(_) => unreachable!("truncation must be detected"),
    }
}
