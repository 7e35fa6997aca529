//! Export bridges: a Cypher MERGE script for loading an external graph
//! database, plus DOT and GraphML documents for visualization.
//!
//! All three exports are deterministic: nodes before relationships, both
//! in ascending id order, properties in sorted name order. Cypher string
//! literals use single quotes with backslash escapes; DOT uses
//! double-quoted ids.

use std::fmt::Write as _;

use crate::ontology::IdentityKey;
use crate::query::ast::quote_text;
use crate::store::value::{format_float, PropertyValue, ScalarValue};
use crate::store::{GraphNode, PropertyGraph};

fn cypher_scalar(value: &ScalarValue) -> String {
    match value {
        ScalarValue::Text(s) => quote_text(s),
        ScalarValue::Float(f) => format_float(*f),
        other => other.to_string(),
    }
}

fn cypher_value(value: &PropertyValue) -> String {
    match value {
        PropertyValue::Null => "null".to_string(),
        PropertyValue::Bool(b) => b.to_string(),
        PropertyValue::Int(i) => i.to_string(),
        PropertyValue::Float(f) => format_float(*f),
        PropertyValue::Text(s) => quote_text(s),
        PropertyValue::List(items) => {
            let rendered: Vec<String> = items.iter().map(cypher_scalar).collect();
            format!("[{}]", rendered.join(", "))
        }
    }
}

/// The property names that key this node in a MERGE map: its label's
/// identity properties when the node carries all of them, otherwise every
/// property it has.
fn merge_key_names(node: &GraphNode) -> Vec<&str> {
    let identity_complete = IdentityKey::from_properties(node.label, |name| {
        node.properties.get(name)
    })
    .is_some();
    if identity_complete {
        node.label.identity_properties().to_vec()
    } else {
        node.properties.keys().map(String::as_str).collect()
    }
}

fn merge_map(node: &GraphNode, names: &[&str]) -> String {
    let pairs: Vec<String> = names
        .iter()
        .filter_map(|name| {
            node.properties
                .get(*name)
                .map(|value| format!("{}: {}", name, cypher_value(value)))
        })
        .collect();
    if pairs.is_empty() {
        String::new()
    } else {
        format!(" {{{}}}", pairs.join(", "))
    }
}

/// Renders the graph as a script of MERGE statements. Run against an
/// empty external instance it reproduces the per-label and per-type
/// counts; run twice it is a no-op, since nodes are keyed by their
/// identity properties.
pub fn export_cypher(graph: &PropertyGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "// knowledge graph export: {} nodes, {} relationships",
        graph.node_count(),
        graph.relationship_count()
    );
    let _ = writeln!(out, "// statements are idempotent; apply in order");

    for node in graph.nodes() {
        let key_names = merge_key_names(node);
        let _ = write!(out, "MERGE (n:{}{})", node.label, merge_map(node, &key_names));
        let set_items: Vec<String> = node
            .properties
            .iter()
            .filter(|(name, _)| !key_names.contains(&name.as_str()))
            .map(|(name, value)| format!("n.{} = {}", name, cypher_value(value)))
            .collect();
        if !set_items.is_empty() {
            let _ = write!(out, " SET {}", set_items.join(", "));
        }
        let _ = writeln!(out, ";");
    }

    for rel in graph.relationships() {
        let source = graph.node(rel.source).expect("referential integrity");
        let target = graph.node(rel.target).expect("referential integrity");
        let _ = writeln!(
            out,
            "MATCH (a:{}{}), (b:{}{}) MERGE (a)-[:{}]->(b);",
            source.label,
            merge_map(source, &merge_key_names(source)),
            target.label,
            merge_map(target, &merge_key_names(target)),
            rel.rel_type
        );
    }
    out
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', "\\n")
}

/// Display text for a node in visual exports: the label's designated
/// display property, falling back to `Label#id`.
fn display_text(node: &GraphNode) -> String {
    match node.properties.get(node.label.display_property()) {
        Some(PropertyValue::Text(s)) => s.clone(),
        Some(other) => other.to_string(),
        None => format!("{}#{}", node.label, node.id),
    }
}

/// Renders the graph as a DOT digraph, one designated property as each
/// node's display label.
pub fn export_dot(graph: &PropertyGraph) -> String {
    let mut out = String::from("digraph mrm3 {\n");
    out.push_str("  node [shape=box];\n");
    for node in graph.nodes() {
        let _ = writeln!(
            out,
            "  n{} [label=\"{}\"];",
            node.id,
            dot_escape(&display_text(node))
        );
    }
    for rel in graph.relationships() {
        let _ = writeln!(
            out,
            "  n{} -> n{} [label=\"{}\"];",
            rel.source, rel.target, rel.rel_type
        );
    }
    out.push_str("}\n");
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
        .replace('\'', "&apos;")
}

/// Renders the graph as GraphML with node label, node display text and
/// edge type attributes.
pub fn export_graphml(graph: &PropertyGraph) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(concat!(
        "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\"",
        " xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\"",
        " xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns",
        " http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n"
    ));
    out.push_str("  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n");
    out.push_str(
        "  <key id=\"display\" for=\"node\" attr.name=\"display\" attr.type=\"string\"/>\n",
    );
    out.push_str("  <key id=\"type\" for=\"edge\" attr.name=\"type\" attr.type=\"string\"/>\n");
    out.push_str("  <graph id=\"G\" edgedefault=\"directed\">\n");
    for node in graph.nodes() {
        let _ = writeln!(out, "    <node id=\"n{}\">", node.id);
        let _ = writeln!(out, "      <data key=\"label\">{}</data>", node.label);
        let _ = writeln!(
            out,
            "      <data key=\"display\">{}</data>",
            xml_escape(&display_text(node))
        );
        out.push_str("    </node>\n");
    }
    for rel in graph.relationships() {
        let _ = writeln!(
            out,
            "    <edge id=\"e{}\" source=\"n{}\" target=\"n{}\">",
            rel.id, rel.source, rel.target
        );
        let _ = writeln!(out, "      <data key=\"type\">{}</data>", rel.rel_type);
        out.push_str("    </edge>\n");
    }
    out.push_str("  </graph>\n");
    out.push_str("</graphml>\n");
    out
}
