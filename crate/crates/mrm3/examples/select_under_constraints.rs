//! Constraint-based model selection: lowest environmental impact among
//! the models that satisfy an error bound, a WHERE clause over two
//! satellite nodes.
//!
//! ```bash
//! cargo run -p mrm3 --example select_under_constraints
//! ```

use mrm3::app::render;
use mrm3::fixtures;
use mrm3::query::{execute, parse};

fn main() {
    let (_, graph) = fixtures::reference_graph();

    // greenest model whose training RMSE stays under the bound
    let constrained = "\
MATCH (m:Model)-[:TRAINS_ON]->(t:ModelTraining)
MATCH (i:ModelInference)-[:INFERENCE_ON]->(m)
WHERE t.RMSE <= 3.0 AND i.energyConsumption < 1.0
RETURN m.name, t.RMSE AS rmse, i.energyConsumption AS energy, i.latencyMs
ORDER BY i.energyConsumption ASC";
    println!("{}\n", constrained);
    let table = execute(&graph, &parse(constrained).unwrap());
    println!("{}", render::to_table(&table));

    // the same machinery answers inventory questions
    let inventory = "\
MATCH (m:Model)-[:UTILIZES]->(a:ModelArchitecture {type: 'Random Forest'})
MATCH (m)-[:TRAINED_ON]->(d:Dataset)
RETURN m.name, d.name AS dataset, m.sizeMB
ORDER BY m.sizeMB DESC
LIMIT 3";
    println!("{}\n", inventory);
    let table = execute(&graph, &parse(inventory).unwrap());
    println!("{}", render::to_table(&table));
}
