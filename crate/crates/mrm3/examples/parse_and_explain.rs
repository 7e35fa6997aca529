//! A tour of the query front end: tokens, AST, canonical text, plans,
//! and the error positions the parser reports.
//!
//! ```bash
//! cargo run -p mrm3 --example parse_and_explain
//! ```

use mrm3::fixtures;
use mrm3::query::{explain, parse, pretty, tokenize};

fn main() {
    let text = "match (m:Model)-[:UTILIZES]->(a:ModelArchitecture) \
                where m.sizeMB <= 25.0 and not a.type = 'MLP' \
                return m.name, a.type as arch order by m.sizeMB desc limit 4";

    println!("tokens:");
    for token in tokenize(text).unwrap().iter().take(8) {
        println!("  {}:{}  {:?}", token.line, token.column, token.kind);
    }

    let ast = parse(text).unwrap();
    println!("\ncanonical form:\n{}", pretty(&ast));

    let (_, graph) = fixtures::reference_graph();
    println!("plan:\n{}", explain(&graph, &ast));

    // errors carry 1-based line:column and what was expected
    for bad in [
        "MATCH (m:Widget) RETURN m",
        "MATCH (m:Model RETURN m",
        "RETURN nobody",
        "MATCH (n) RETURN n LIMIT 0",
    ] {
        let err = parse(bad).unwrap_err();
        println!("{:<28} -> {}", bad, err);
    }
}
