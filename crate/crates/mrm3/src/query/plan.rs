//! Human-readable execution plans. The plan mirrors exactly what the
//! executor will do, including the per-clause choice of scan end, so the
//! text is stable for a given graph and query.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::ast::*;
use super::exec::orient_path;
use crate::store::PropertyGraph;

pub fn explain(graph: &PropertyGraph, ast: &QueryAst) -> String {
    let mut steps: Vec<String> = Vec::new();
    let mut bound: BTreeSet<String> = BTreeSet::new();

    for clause in &ast.matches {
        let (path, candidates) = orient_path(graph, &clause.path);
        let scan_kind = if path.start.label.is_some() {
            "NodeScan"
        } else {
            "AllNodesScan"
        };
        steps.push(format!(
            "{} {} [{} candidate{}]",
            scan_kind,
            node_pattern_text(&path.start),
            candidates,
            if candidates == 1 { "" } else { "s" }
        ));
        let mut from = anchor_text(&path.start);
        for (rel, node) in &path.segments {
            steps.push(format!(
                "Expand {}{}{}",
                from,
                rel_pattern_text(rel),
                node_pattern_text(node)
            ));
            from = anchor_text(node);
        }

        let clause_vars: BTreeSet<String> = clause
            .path
            .node_patterns()
            .filter_map(|n| n.variable.clone())
            .chain(clause.path.rel_patterns().filter_map(|r| r.variable.clone()))
            .collect();
        if !bound.is_empty() {
            let shared: Vec<&String> = clause_vars.intersection(&bound).collect();
            if shared.is_empty() {
                steps.push("CartesianProduct".to_string());
            } else {
                steps.push(format!(
                    "Join on {}",
                    shared
                        .iter()
                        .map(|s| s.as_str())
                        .collect::<Vec<_>>()
                        .join(", ")
                ));
            }
        }
        bound.extend(clause_vars);
    }

    if let Some(where_expr) = &ast.where_expr {
        steps.push(format!("Filter {}", bool_expr_text(where_expr)));
    }
    if !ast.order_keys.is_empty() {
        let keys: Vec<String> = ast
            .order_keys
            .iter()
            .map(|key| {
                format!(
                    "{} {}",
                    value_expr_text(&key.expr),
                    if key.ascending { "ASC" } else { "DESC" }
                )
            })
            .collect();
        steps.push(format!("Sort {}", keys.join(", ")));
    }
    if let Some(limit) = ast.limit {
        steps.push(format!("Limit {}", limit));
    }
    let columns: Vec<String> = ast.return_items.iter().map(ReturnItem::column_name).collect();
    steps.push(format!("Project {}", columns.join(", ")));

    let mut out = String::new();
    for (i, step) in steps.iter().enumerate() {
        let _ = writeln!(out, "{}. {}", i + 1, step);
    }
    out
}

/// A node already visited is referenced by variable only.
fn anchor_text(pattern: &NodePattern) -> String {
    match &pattern.variable {
        Some(v) => format!("({})", v),
        None => "()".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ontology::{NodeLabel, RelationType};
    use crate::query::parse;
    use crate::store::{PropertyMap, PropertyValue};

    fn graph_with_counts() -> PropertyGraph {
        let mut g = PropertyGraph::new();
        let d = g
            .create_node(NodeLabel::Dataset, PropertyMap::new())
            .unwrap();
        for i in 0..3 {
            let m = g
                .create_node(
                    NodeLabel::Model,
                    [("name".to_string(), PropertyValue::text(format!("m{}", i)))]
                        .into_iter()
                        .collect(),
                )
                .unwrap();
            g.create_relationship(RelationType::TrainedOn, m, d, PropertyMap::new())
                .unwrap();
        }
        g
    }

    #[test]
    fn plan_starts_at_the_more_selective_end() {
        let g = graph_with_counts();
        let ast = parse("MATCH (m:Model)-[:TRAINED_ON]->(d:Dataset) RETURN m.name").unwrap();
        let plan = explain(&g, &ast);
        assert!(
            plan.starts_with("1. NodeScan (d:Dataset) [1 candidate]"),
            "{}",
            plan
        );
        assert!(plan.contains("Expand (d)<-[:TRAINED_ON]-(m:Model)"), "{}", plan);
    }

    #[test]
    fn all_nodes_scan_for_unlabeled_pattern() {
        let g = graph_with_counts();
        let ast = parse("MATCH (n) RETURN n").unwrap();
        let plan = explain(&g, &ast);
        assert_eq!(plan, "1. AllNodesScan (n) [4 candidates]\n2. Project n\n");
    }

    #[test]
    fn plan_is_deterministic() {
        let g = graph_with_counts();
        let ast = parse(
            "MATCH (m:Model)-[:TRAINED_ON]->(d:Dataset) MATCH (m)-[:TRAINED_ON]->(e:Dataset) WHERE m.name = 'm0' RETURN m.name ORDER BY m.name DESC LIMIT 2",
        )
        .unwrap();
        assert_eq!(explain(&g, &ast), explain(&g, &ast));
        let plan = explain(&g, &ast);
        assert!(plan.contains("Join on m"), "{}", plan);
        assert!(plan.contains("Filter m.name = 'm0'"), "{}", plan);
        assert!(plan.contains("Sort m.name DESC"), "{}", plan);
        assert!(plan.contains("Limit 2"), "{}", plan);
    }
}
