//! The flagship selection query: all models ordered by inference energy,
//! with architecture, training dataset and computational complexity.
//!
//! ```bash
//! cargo run -p mrm3 --example rank_models_by_energy
//! ```

use mrm3::app::render;
use mrm3::fixtures;
use mrm3::query::{execute, explain, parse};

const RANKING: &str = "\
MATCH (m:Model)-[:TRAINED_ON]->(d:Dataset)
MATCH (m)-[:UTILIZES]->(a:ModelArchitecture)
MATCH (i:ModelInference)-[:INFERENCE_ON]->(m)
RETURN m.name,
       a.type AS architecture,
       d.name AS dataset,
       i.energyConsumption,
       i.flops
ORDER BY i.energyConsumption ASC
LIMIT 5";

fn main() {
    let (_, graph) = fixtures::reference_graph();
    let ast = parse(RANKING).unwrap();

    println!("{}\n", RANKING);
    println!("plan:\n{}", explain(&graph, &ast));

    let table = execute(&graph, &ast);
    println!("{}", render::to_table(&table));
}
