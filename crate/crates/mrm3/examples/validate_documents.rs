//! Validate metadata documents and read the violation report.
//!
//! ```bash
//! cargo run -p mrm3 --example validate_documents
//! ```

use mrm3::fixtures::{self, FixtureConfig};
use mrm3::schema::{parse_document, validate_document};

fn main() {
    // a known-good document straight from the corpus generator
    let doc = fixtures::generate(&FixtureConfig::default()).unwrap().remove(0);
    let good = doc.to_json_string();
    let report = validate_document(&good);
    println!("complete document: valid = {}", report.valid);

    // break it: drop a section, negate an energy, nest a hyperparameter
    let mut broken: serde_json::Value = serde_json::from_str(&good).unwrap();
    broken.as_object_mut().unwrap().remove("inference");
    broken["training"]["sustainability"]["energyConsumption"] = serde_json::json!(-1);
    broken["training"]["hyperparameters"]["grid"] = serde_json::json!({"nested": true});

    let report = validate_document(&broken.to_string());
    println!("\nbroken document: valid = {}", report.valid);
    for violation in &report.violations {
        println!("  {:<55} [{}] {}", violation.json_path, violation.rule, violation.message);
    }

    // parse_document refuses anything the validator flags
    match parse_document(&broken.to_string()) {
        Err(e) => println!("\nparse_document: {}", e),
        Ok(_) => unreachable!("invalid documents never parse"),
    }

    // syntactic garbage is a report too, not a crash
    let report = validate_document("{not json at all");
    println!(
        "\ngarbage input: rule = {}, path = {}",
        report.violations[0].rule, report.violations[0].json_path
    );
}
