//! Acceptance suite. Each test enforces one release criterion at its
//! stated tolerance and prints one pass line; run with
//! `cargo test -p mrm3 --test acceptance -- --nocapture` to see them.

mod common;

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mrm3::fixtures::{self, FixtureConfig, REFERENCE_TOP_MODELS};
use mrm3::ontology::{ingest_document, NodeLabel, RelationType};
use mrm3::query;
use mrm3::schema::{load_schema, validate_json};
use mrm3::store::{snapshot, PropertyGraph, PropertyValue};

use common::{
    compare_with_oracle, random_document, random_graph, random_query, ENERGY_RANKING_QUERY,
};

fn pass(criterion: u32, summary: &str) {
    println!("[PASS] criterion {}: {}", criterion, summary);
}

#[test]
fn criterion_1_reference_corpus_class_counts() {
    let started = Instant::now();
    let (_, graph) = fixtures::reference_graph();
    let stats = graph.stats();
    assert_eq!(stats.label_count(NodeLabel::Model), 22);
    assert_eq!(stats.label_count(NodeLabel::Dataset), 4);
    assert_eq!(stats.label_count(NodeLabel::ModelArchitecture), 4);
    assert_eq!(stats.label_count(NodeLabel::Device), 1);
    assert_eq!(stats.relation_count(RelationType::RunsOn), 44);
    let elapsed = started.elapsed();
    assert!(
        elapsed < Duration::from_secs(5),
        "generate + ingest took {:?}",
        elapsed
    );
    pass(
        1,
        "fixture ingest yields Model=22 Dataset=4 ModelArchitecture=4 Device=1 RUNS_ON=44 in under 5 s",
    );
}

#[test]
fn criterion_2_calibrated_totals() {
    let documents = fixtures::generate(&FixtureConfig::default()).unwrap();
    let stats = fixtures::calibrate(&documents).unwrap();
    assert_eq!(stats.total_nodes, 113);
    assert_eq!(stats.total_relationships, 199);
    pass(
        2,
        "default calibration materializes exactly 113 nodes and 199 relationships",
    );
}

#[test]
fn criterion_3_energy_ranking_top_five() {
    let (_, graph) = fixtures::reference_graph();
    let ast = query::parse(ENERGY_RANKING_QUERY).expect("reference query parses verbatim");
    let table = query::execute(&graph, &ast);
    assert!(table.rows.len() >= 5, "expected at least 5 rows");
    for (row, (architecture, dataset, energy, flops)) in
        table.rows.iter().zip(REFERENCE_TOP_MODELS)
    {
        assert_eq!(row[1], PropertyValue::text(architecture));
        assert_eq!(row[2], PropertyValue::text(dataset));
        match &row[3] {
            PropertyValue::Float(e) => assert_eq!(
                (e * 1000.0).round(),
                (energy * 1000.0).round(),
                "energy {} vs {} beyond 3 decimal places",
                e,
                energy
            ),
            other => panic!("energy column holds {:?}", other),
        }
        assert_eq!(row[4], PropertyValue::Int(flops as i64));
    }
    pass(
        3,
        "energy-ranking query reproduces the five reference rows in order (energy at 3 decimals)",
    );
}

#[test]
fn criterion_4_query_and_export_latency() {
    let (_, graph) = fixtures::reference_graph();
    let ast = query::parse(ENERGY_RANKING_QUERY).unwrap();

    let median = |mut samples: Vec<Duration>| -> Duration {
        samples.sort();
        samples[samples.len() / 2]
    };

    let mut query_runs = Vec::with_capacity(100);
    for _ in 0..100 {
        let t = Instant::now();
        let table = query::execute(&graph, &ast);
        query_runs.push(t.elapsed());
        assert_eq!(table.rows.len(), 22);
    }
    let query_median = median(query_runs);
    assert!(
        query_median <= Duration::from_millis(50),
        "query median {:?} exceeds 50 ms",
        query_median
    );

    let mut export_runs = Vec::with_capacity(100);
    for _ in 0..100 {
        let t = Instant::now();
        let text = mrm3::interchange::export_graphml(&graph);
        export_runs.push(t.elapsed());
        assert!(text.contains("</graphml>"));
    }
    let export_median = median(export_runs);
    assert!(
        export_median <= Duration::from_millis(100),
        "export median {:?} exceeds 100 ms",
        export_median
    );
    pass(
        4,
        "median of 100 runs: ranking query <= 50 ms, full-graph export <= 100 ms",
    );
}

#[test]
fn criterion_5_executor_matches_exhaustive_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(501);
    for round in 0..1000 {
        let graph = random_graph(&mut rng, 12, 20);
        let ast = random_query(&mut rng, 1);
        if let Err(diff) = compare_with_oracle(&graph, &ast) {
            panic!("round {}: {}", round, diff);
        }
    }
    pass(
        5,
        "1000 random graphs and single-clause queries bag-match the exhaustive oracle (ordered when sorted)",
    );
}

#[test]
fn criterion_6_ingest_idempotence_and_permutation_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(601);
    for round in 0..50 {
        let doc_count = 1 + (round % 30);
        let documents: Vec<_> = (0..doc_count).map(|_| random_document(&mut rng)).collect();

        let mut once = PropertyGraph::new();
        for doc in &documents {
            ingest_document(&mut once, doc).unwrap();
        }
        let baseline = once.stats();

        let mut twice = PropertyGraph::new();
        for doc in documents.iter().chain(documents.iter()) {
            ingest_document(&mut twice, doc).unwrap();
        }
        assert_eq!(twice.stats(), baseline, "double ingest changed counts");

        for _ in 0..3 {
            let mut shuffled = documents.clone();
            shuffled.shuffle(&mut rng);
            let mut permuted = PropertyGraph::new();
            for doc in &shuffled {
                ingest_document(&mut permuted, doc).unwrap();
            }
            assert_eq!(permuted.stats(), baseline, "permutation changed counts");
        }
    }
    pass(
        6,
        "50 random document sets: double ingest and shuffled ingests leave all counts unchanged",
    );
}

#[test]
fn criterion_7_schema_gate_on_required_fields() {
    let documents = fixtures::generate(&FixtureConfig::default()).unwrap();
    let required_paths = load_schema().required_paths();
    assert!(required_paths.len() > 20, "schema should require many fields");

    for doc in &documents {
        let json = doc.to_json_value();
        assert!(validate_json(&json).valid, "unmodified fixture must validate");

        for path in &required_paths {
            let mut broken = json.clone();
            remove_path(&mut broken, path);
            let report = validate_json(&broken);
            assert!(
                !report.valid,
                "removing {} went unnoticed for {}",
                path, doc.basic.name
            );
            assert!(
                report.violations.iter().any(|v| v.json_path == *path),
                "no violation at {} (got {:?})",
                path,
                report.violations
            );
        }
    }
    pass(
        7,
        "removing any required field from any fixture document violates at exactly that JSON path",
    );
}

fn remove_path(value: &mut serde_json::Value, path: &str) {
    let segments: Vec<&str> = path.trim_start_matches("$.").split('.').collect();
    let mut cursor = value;
    for segment in &segments[..segments.len() - 1] {
        cursor = cursor.get_mut(*segment).expect("path exists");
    }
    cursor
        .as_object_mut()
        .expect("parent is an object")
        .shift_remove(*segments.last().unwrap());
}

#[test]
fn criterion_8_snapshot_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(801);
    let dir = tempfile::tempdir().unwrap();
    for round in 0..100 {
        let graph = random_graph(&mut rng, 20, 40);
        let path = dir.path().join(format!("graph-{}.snapshot", round));
        snapshot::save(&graph, &path).unwrap();
        let loaded = snapshot::load(&path).unwrap();
        let original_nodes: Vec<_> = graph.nodes().collect();
        let loaded_nodes: Vec<_> = loaded.nodes().collect();
        assert_eq!(original_nodes, loaded_nodes, "round {} node diff", round);
        let original_rels: Vec<_> = graph.relationships().collect();
        let loaded_rels: Vec<_> = loaded.relationships().collect();
        assert_eq!(original_rels, loaded_rels, "round {} relationship diff", round);
        assert_eq!(graph.stats(), loaded.stats());
    }
    pass(8, "100 random graphs survive save/load with zero diffs");
}

#[test]
fn criterion_9_grammar_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(901);
    for round in 0..1000 {
        let ast = random_query(&mut rng, 1 + (round % 3));
        let printed = query::pretty(&ast);
        match query::parse(&printed) {
            Ok(reparsed) => assert_eq!(
                ast, reparsed,
                "round {}: reparse diverged for\n{}",
                round, printed
            ),
            Err(e) => panic!("round {}: pretty output failed to parse: {}\n{}", round, e, printed),
        }
    }
    pass(9, "1000 generated queries reparse to structurally identical ASTs");
}
