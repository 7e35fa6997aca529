//! Run the HTTP service in-process and drive it like an MLOps client:
//! push a document, query the ranking, pull stats.
//!
//! ```bash
//! cargo run -p mrm3 --example http_service
//! ```

use std::net::{IpAddr, Ipv4Addr, SocketAddr};
use std::sync::Arc;

use mrm3::app::{serve, ServiceState};
use mrm3::fixtures::{self, FixtureConfig};
use mrm3::store::PropertyGraph;

#[tokio::main(flavor = "current_thread")]
async fn main() {
    let state = Arc::new(ServiceState::new(PropertyGraph::new(), None));
    let (tx, rx) = tokio::sync::oneshot::channel();
    let addr = SocketAddr::new(IpAddr::V4(Ipv4Addr::LOCALHOST), 0);
    tokio::spawn(serve(state, addr, Some(tx)));
    let base = format!("http://{}", rx.await.unwrap());
    println!("service listening on {}", base);

    let client = reqwest::Client::new();

    // push two documents; the second shares its dataset and device
    let docs = fixtures::generate(&FixtureConfig::default()).unwrap();
    for doc in &docs[..2] {
        let report: serde_json::Value = client
            .post(format!("{}/api/documents", base))
            .body(doc.to_json_string())
            .send()
            .await
            .unwrap()
            .json()
            .await
            .unwrap();
        println!(
            "ingested {}: +{} nodes, +{} relationships",
            doc.basic.name, report["nodesCreated"], report["relationshipsCreated"]
        );
    }

    // an invalid document comes back as 422 with the full report
    let response = client
        .post(format!("{}/api/documents", base))
        .body("{\"basic\": {}}")
        .send()
        .await
        .unwrap();
    println!("invalid document -> HTTP {}", response.status());

    let ranking: serde_json::Value = client
        .post(format!("{}/api/query", base))
        .json(&serde_json::json!({
            "query": "MATCH (i:ModelInference)-[:INFERENCE_ON]->(m:Model) \
                      RETURN m.name, i.energyConsumption ORDER BY i.energyConsumption ASC"
        }))
        .send()
        .await
        .unwrap()
        .json()
        .await
        .unwrap();
    println!("\nranking: {}", ranking);

    let stats: serde_json::Value = client
        .get(format!("{}/api/stats", base))
        .send()
        .await
        .unwrap()
        .json()
        .await
        .unwrap();
    println!(
        "\nstats: {} nodes, {} relationships",
        stats["totalNodes"], stats["totalRelationships"]
    );
}
