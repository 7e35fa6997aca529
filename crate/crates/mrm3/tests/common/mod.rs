//! Shared test infrastructure: seeded random graphs, documents and
//! queries, plus an exhaustive-assignment oracle for query execution.
//!
//! The oracle never traverses the graph. It enumerates assignments of
//! node-pattern positions to nodes and relationship-pattern positions to
//! relationships, filters them by the pattern constraints, and pushes the
//! surviving bindings through its own WHERE/ORDER BY/projection code.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use mrm3::ontology::{NodeLabel, RelationType};
use mrm3::query::ast::{
    BoolExpr, CompareOp, Literal, MatchClause, NodePattern, OrderKey, PathPattern,
    PatternDirection, QueryAst, RelPattern, ReturnItem, ValueExpr,
};
use mrm3::schema::ModelMetadataDocument;
use mrm3::store::value::ScalarValue;
use mrm3::store::{NodeId, PropertyGraph, PropertyMap, PropertyValue, RelationshipId};

pub const PROP_POOL: [&str; 5] = ["name", "version", "score", "flag", "energy"];
pub const TEXT_POOL: [&str; 5] = ["a", "b", "m1", "UMU", "x y"];
pub const FLOAT_POOL: [f64; 4] = [0.5, 1.25, 2.0, 0.072];
const NODE_VARS: [&str; 3] = ["a", "b", "c"];
const REL_VARS: [&str; 2] = ["r", "s"];

// --- random graphs -------------------------------------------------------

pub fn random_property(rng: &mut ChaCha8Rng) -> PropertyValue {
    match rng.gen_range(0..100) {
        0..=29 => PropertyValue::Int(rng.gen_range(-3..4)),
        30..=54 => PropertyValue::Float(*FLOAT_POOL.choose(rng).unwrap()),
        55..=79 => PropertyValue::Text(TEXT_POOL.choose(rng).unwrap().to_string()),
        80..=89 => PropertyValue::Bool(rng.gen_bool(0.5)),
        90..=94 => PropertyValue::Null,
        _ => {
            let len = rng.gen_range(0..3);
            PropertyValue::List(
                (0..len)
                    .map(|_| {
                        if rng.gen_bool(0.5) {
                            ScalarValue::Int(rng.gen_range(-2..3))
                        } else {
                            ScalarValue::Text(TEXT_POOL.choose(rng).unwrap().to_string())
                        }
                    })
                    .collect(),
            )
        }
    }
}

/// A graph of at most `max_nodes` nodes and `max_rels` relationships with
/// random labels, types and properties. Self-loops and parallel edges of
/// different types are possible.
pub fn random_graph(rng: &mut ChaCha8Rng, max_nodes: usize, max_rels: usize) -> PropertyGraph {
    let mut graph = PropertyGraph::new();
    let node_count = rng.gen_range(1..=max_nodes);
    let mut ids = Vec::with_capacity(node_count);
    for _ in 0..node_count {
        let label = *NodeLabel::ALL.choose(rng).unwrap();
        let mut props = PropertyMap::new();
        for _ in 0..rng.gen_range(0..=3) {
            props.insert(
                PROP_POOL.choose(rng).unwrap().to_string(),
                random_property(rng),
            );
        }
        ids.push(graph.create_node(label, props).unwrap());
    }
    let rel_attempts = rng.gen_range(0..=max_rels);
    for _ in 0..rel_attempts {
        let rel_type = *RelationType::ALL.choose(rng).unwrap();
        let source = *ids.choose(rng).unwrap();
        let target = *ids.choose(rng).unwrap();
        // duplicate triples are rejected by the store; just skip them
        let _ = graph.create_relationship(rel_type, source, target, PropertyMap::new());
    }
    graph
}

// --- random queries ------------------------------------------------------

fn random_literal(rng: &mut ChaCha8Rng) -> Literal {
    match rng.gen_range(0..100) {
        0..=34 => Literal::Int(rng.gen_range(-3..4)),
        35..=59 => Literal::Float(*FLOAT_POOL.choose(rng).unwrap()),
        60..=84 => Literal::Text(TEXT_POOL.choose(rng).unwrap().to_string()),
        85..=94 => Literal::Bool(rng.gen_bool(0.5)),
        _ => Literal::Null,
    }
}

fn random_node_pattern(rng: &mut ChaCha8Rng) -> NodePattern {
    let variable = if rng.gen_bool(0.75) {
        Some(NODE_VARS.choose(rng).unwrap().to_string())
    } else {
        None
    };
    let label = if rng.gen_bool(0.6) {
        Some(*NodeLabel::ALL.choose(rng).unwrap())
    } else {
        None
    };
    let properties = if rng.gen_bool(0.25) {
        vec![(
            PROP_POOL.choose(rng).unwrap().to_string(),
            random_literal(rng),
        )]
    } else {
        Vec::new()
    };
    NodePattern {
        variable,
        label,
        properties,
    }
}

fn random_clause(rng: &mut ChaCha8Rng) -> MatchClause {
    let segment_count = rng.gen_range(0..=2);
    let mut rel_vars: Vec<&str> = REL_VARS.to_vec();
    let start = random_node_pattern(rng);
    let segments = (0..segment_count)
        .map(|_| {
            let variable = if rng.gen_bool(0.3) && !rel_vars.is_empty() {
                Some(rel_vars.remove(rng.gen_range(0..rel_vars.len())).to_string())
            } else {
                None
            };
            let rel_type = if rng.gen_bool(0.6) {
                Some(*RelationType::ALL.choose(rng).unwrap())
            } else {
                None
            };
            let direction = match rng.gen_range(0..3) {
                0 => PatternDirection::LeftToRight,
                1 => PatternDirection::RightToLeft,
                _ => PatternDirection::Undirected,
            };
            (
                RelPattern {
                    variable,
                    rel_type,
                    direction,
                },
                random_node_pattern(rng),
            )
        })
        .collect();
    MatchClause {
        path: PathPattern { start, segments },
    }
}

fn bound_variables(clauses: &[MatchClause]) -> Vec<String> {
    let mut vars = Vec::new();
    for clause in clauses {
        for node in clause.path.node_patterns() {
            if let Some(v) = &node.variable {
                if !vars.contains(v) {
                    vars.push(v.clone());
                }
            }
        }
        for rel in clause.path.rel_patterns() {
            if let Some(v) = &rel.variable {
                if !vars.contains(v) {
                    vars.push(v.clone());
                }
            }
        }
    }
    vars
}

fn random_value_expr(rng: &mut ChaCha8Rng, bound: &[String]) -> ValueExpr {
    if bound.is_empty() || rng.gen_bool(0.15) {
        return ValueExpr::Literal(random_literal(rng));
    }
    let variable = bound.choose(rng).unwrap().clone();
    if rng.gen_bool(0.3) {
        ValueExpr::Variable(variable)
    } else {
        ValueExpr::Property {
            variable,
            property: PROP_POOL.choose(rng).unwrap().to_string(),
        }
    }
}

fn random_bool_expr(rng: &mut ChaCha8Rng, bound: &[String], depth: u32) -> BoolExpr {
    let pick = rng.gen_range(0..100);
    if depth == 0 || pick < 60 {
        let ops = [
            CompareOp::Eq,
            CompareOp::NotEq,
            CompareOp::Lt,
            CompareOp::LtEq,
            CompareOp::Gt,
            CompareOp::GtEq,
        ];
        return BoolExpr::Compare {
            op: *ops.choose(rng).unwrap(),
            lhs: random_value_expr(rng, bound),
            rhs: random_value_expr(rng, bound),
        };
    }
    match pick {
        60..=69 => BoolExpr::Not(Box::new(random_bool_expr(rng, bound, depth - 1))),
        70..=84 => BoolExpr::And(
            Box::new(random_bool_expr(rng, bound, depth - 1)),
            Box::new(random_bool_expr(rng, bound, depth - 1)),
        ),
        _ => BoolExpr::Or(
            Box::new(random_bool_expr(rng, bound, depth - 1)),
            Box::new(random_bool_expr(rng, bound, depth - 1)),
        ),
    }
}

/// A structurally valid random query with the given number of MATCH
/// clauses. LIMIT only ever rides on ORDER BY, so ordered-prefix
/// comparisons stay meaningful.
pub fn random_query(rng: &mut ChaCha8Rng, clause_count: usize) -> QueryAst {
    let matches: Vec<MatchClause> = (0..clause_count).map(|_| random_clause(rng)).collect();
    let bound = bound_variables(&matches);
    let where_expr = if rng.gen_bool(0.5) {
        Some(random_bool_expr(rng, &bound, 2))
    } else {
        None
    };
    let item_count = rng.gen_range(1..=3);
    let alias_pool = ["x", "y", "z"];
    let return_items = (0..item_count)
        .map(|i| ReturnItem {
            expr: random_value_expr(rng, &bound),
            alias: rng.gen_bool(0.3).then(|| alias_pool[i].to_string()),
        })
        .collect();
    let order_keys: Vec<OrderKey> = if rng.gen_bool(0.5) {
        (0..rng.gen_range(1..=2))
            .map(|_| OrderKey {
                expr: random_value_expr(rng, &bound),
                ascending: rng.gen_bool(0.5),
            })
            .collect()
    } else {
        Vec::new()
    };
    let limit = (!order_keys.is_empty() && rng.gen_bool(0.3)).then(|| rng.gen_range(1..=5));
    QueryAst {
        matches,
        where_expr,
        return_items,
        order_keys,
        limit,
    }
}

// --- documents -----------------------------------------------------------

/// A random valid metadata document drawn from small pools, so identity
/// collisions across documents are common (which is what the merge tests
/// want).
pub fn random_document(rng: &mut ChaCha8Rng) -> ModelMetadataDocument {
    let json = serde_json::json!({
        "basic": {
            "name": format!("model-{}", rng.gen_range(0..8)),
            "version": format!("{}.0", rng.gen_range(1..4)),
            "date": "2025-01-15",
            "description": "randomized",
            "authors": ["gen"]
        },
        "general": {
            "sizeMB": rng.gen_range(1.0..50.0_f64).round(),
            "architecture": *["Random Forest", "KNeighbors", "XGBoost"].choose(rng).unwrap(),
            "modelType": "supervised",
            "explainability": "none",
            "service": *["localization", "forecasting"].choose(rng).unwrap(),
            "problemType": "regression"
        },
        "dataset": {
            "name": *["UMU", "Lumos5G", "LOG-a-TEC Winter"].choose(rng).unwrap(),
            "version": format!("{}", rng.gen_range(1..3)),
            "date": "2024-06-01",
            "sizeMB": 10.0
        },
        "training": {
            "splitType": "80/20 holdout",
            "optimizer": "none",
            "hyperparameters": {"n_estimators": rng.gen_range(1..4) * 100},
            "evaluation": {"MAE": rng.gen_range(1.0..3.0_f64).round()},
            "sustainability": {"energyConsumption": 100.0, "carbonFootprint": 5.0},
            "device": {
                "cpu": *["Xeon", "EPYC"].choose(rng).unwrap(),
                "gpu": "none",
                "memoryGB": 64.0
            }
        },
        "inference": {
            "latencyMs": 5.0,
            "flops": rng.gen_range(100..400),
            "sustainability": {"energyConsumption": 0.5, "carbonFootprint": 0.01},
            "device": {
                "cpu": *["Xeon", "EPYC"].choose(rng).unwrap(),
                "gpu": "none",
                "memoryGB": 64.0
            }
        }
    });
    mrm3::schema::parse_document(&json.to_string()).expect("generated document is valid")
}

// --- the oracle ----------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum OracleEntity {
    Node(u64),
    Relationship(u64),
}

pub type OracleBinding = BTreeMap<String, OracleEntity>;

fn literal_to_value(literal: &Literal) -> PropertyValue {
    match literal {
        Literal::Null => PropertyValue::Null,
        Literal::Bool(b) => PropertyValue::Bool(*b),
        Literal::Int(i) => PropertyValue::Int(*i),
        Literal::Float(f) => PropertyValue::Float(*f),
        Literal::Text(s) => PropertyValue::Text(s.clone()),
    }
}

fn oracle_number(v: &PropertyValue) -> Option<f64> {
    match v {
        PropertyValue::Int(i) => Some(*i as f64),
        PropertyValue::Float(f) => Some(*f),
        _ => None,
    }
}

/// Three-valued equality: None is unknown.
fn oracle_equals(a: &PropertyValue, b: &PropertyValue) -> Option<bool> {
    if matches!(a, PropertyValue::Null) || matches!(b, PropertyValue::Null) {
        return None;
    }
    if let (Some(x), Some(y)) = (oracle_number(a), oracle_number(b)) {
        return Some(x == y);
    }
    Some(match (a, b) {
        (PropertyValue::Text(x), PropertyValue::Text(y)) => x == y,
        (PropertyValue::Bool(x), PropertyValue::Bool(y)) => x == y,
        (PropertyValue::List(x), PropertyValue::List(y)) => x == y,
        _ => false,
    })
}

fn oracle_ordering(a: &PropertyValue, b: &PropertyValue) -> Option<Ordering> {
    if matches!(a, PropertyValue::Null) || matches!(b, PropertyValue::Null) {
        return None;
    }
    if let (Some(x), Some(y)) = (oracle_number(a), oracle_number(b)) {
        return x.partial_cmp(&y);
    }
    match (a, b) {
        (PropertyValue::Text(x), PropertyValue::Text(y)) => Some(x.cmp(y)),
        (PropertyValue::Bool(x), PropertyValue::Bool(y)) => Some(x.cmp(y)),
        _ => None,
    }
}

fn node_matches(graph: &PropertyGraph, id: NodeId, pattern: &NodePattern) -> bool {
    let node = graph.node(id).expect("node exists");
    if let Some(label) = pattern.label {
        if node.label != label {
            return false;
        }
    }
    pattern.properties.iter().all(|(name, literal)| match node.properties.get(name) {
        Some(actual) => oracle_equals(actual, &literal_to_value(literal)) == Some(true),
        None => false,
    })
}

/// All bindings of one clause by brute force: every combination of node
/// ids for node positions and relationship ids for relationship
/// positions, kept when the full constraint set holds.
fn oracle_clause_bindings(graph: &PropertyGraph, clause: &MatchClause) -> Vec<OracleBinding> {
    let node_patterns: Vec<&NodePattern> = clause.path.node_patterns().collect();
    let rel_patterns: Vec<&RelPattern> = clause.path.rel_patterns().collect();
    let node_ids: Vec<NodeId> = graph.nodes().map(|n| n.id).collect();
    let rel_ids: Vec<RelationshipId> = graph.relationships().map(|r| r.id).collect();

    let mut results = Vec::new();
    let mut node_assignment: Vec<NodeId> = Vec::new();
    assign_nodes(
        graph,
        &node_patterns,
        &rel_patterns,
        &node_ids,
        &rel_ids,
        &mut node_assignment,
        &mut results,
    );
    results
}

fn assign_nodes(
    graph: &PropertyGraph,
    node_patterns: &[&NodePattern],
    rel_patterns: &[&RelPattern],
    node_ids: &[NodeId],
    rel_ids: &[RelationshipId],
    assignment: &mut Vec<NodeId>,
    results: &mut Vec<OracleBinding>,
) {
    if assignment.len() == node_patterns.len() {
        let mut rel_assignment = Vec::new();
        assign_rels(
            graph,
            node_patterns,
            rel_patterns,
            assignment,
            rel_ids,
            &mut rel_assignment,
            results,
        );
        return;
    }
    let position = assignment.len();
    for id in node_ids {
        if !node_matches(graph, *id, node_patterns[position]) {
            continue;
        }
        // repeated node variables must take the same node
        if let Some(v) = &node_patterns[position].variable {
            let consistent = node_patterns[..position]
                .iter()
                .zip(assignment.iter())
                .all(|(p, assigned)| p.variable.as_deref() != Some(v) || assigned == id);
            if !consistent {
                continue;
            }
        }
        assignment.push(*id);
        assign_nodes(
            graph,
            node_patterns,
            rel_patterns,
            node_ids,
            rel_ids,
            assignment,
            results,
        );
        assignment.pop();
    }
}

fn assign_rels(
    graph: &PropertyGraph,
    node_patterns: &[&NodePattern],
    rel_patterns: &[&RelPattern],
    nodes: &[NodeId],
    rel_ids: &[RelationshipId],
    assignment: &mut Vec<RelationshipId>,
    results: &mut Vec<OracleBinding>,
) {
    if assignment.len() == rel_patterns.len() {
        let mut binding = OracleBinding::new();
        for (pattern, id) in node_patterns.iter().zip(nodes) {
            if let Some(v) = &pattern.variable {
                binding.insert(v.clone(), OracleEntity::Node(id.0));
            }
        }
        for (pattern, id) in rel_patterns.iter().zip(assignment.iter()) {
            if let Some(v) = &pattern.variable {
                binding.insert(v.clone(), OracleEntity::Relationship(id.0));
            }
        }
        results.push(binding);
        return;
    }
    let position = assignment.len();
    let pattern = rel_patterns[position];
    let left = nodes[position];
    let right = nodes[position + 1];
    for id in rel_ids {
        // relationship-uniqueness within the clause
        if assignment.contains(id) {
            continue;
        }
        let rel = graph.relationship(*id).expect("rel exists");
        if let Some(t) = pattern.rel_type {
            if rel.rel_type != t {
                continue;
            }
        }
        let endpoint_ok = match pattern.direction {
            PatternDirection::LeftToRight => rel.source == left && rel.target == right,
            PatternDirection::RightToLeft => rel.source == right && rel.target == left,
            PatternDirection::Undirected => {
                (rel.source == left && rel.target == right)
                    || (rel.source == right && rel.target == left)
            }
        };
        if !endpoint_ok {
            continue;
        }
        assignment.push(*id);
        assign_rels(
            graph,
            node_patterns,
            rel_patterns,
            nodes,
            rel_ids,
            assignment,
            results,
        );
        assignment.pop();
    }
}

fn oracle_join(left: Vec<OracleBinding>, right: Vec<OracleBinding>) -> Vec<OracleBinding> {
    let mut out = Vec::new();
    for l in &left {
        for r in &right {
            if r.iter().all(|(k, v)| l.get(k).map_or(true, |e| e == v)) {
                let mut merged = l.clone();
                for (k, v) in r {
                    merged.insert(k.clone(), *v);
                }
                out.push(merged);
            }
        }
    }
    out
}

fn oracle_eval(graph: &PropertyGraph, expr: &ValueExpr, binding: &OracleBinding) -> PropertyValue {
    match expr {
        ValueExpr::Literal(l) => literal_to_value(l),
        ValueExpr::Variable(v) => match binding.get(v) {
            Some(OracleEntity::Node(id)) => PropertyValue::Int(*id as i64),
            Some(OracleEntity::Relationship(id)) => PropertyValue::Int(*id as i64),
            None => PropertyValue::Null,
        },
        ValueExpr::Property { variable, property } => match binding.get(variable) {
            Some(OracleEntity::Node(id)) => graph
                .node(NodeId(*id))
                .and_then(|n| n.properties.get(property))
                .cloned()
                .unwrap_or(PropertyValue::Null),
            Some(OracleEntity::Relationship(id)) => graph
                .relationship(RelationshipId(*id))
                .and_then(|r| r.properties.get(property))
                .cloned()
                .unwrap_or(PropertyValue::Null),
            None => PropertyValue::Null,
        },
    }
}

fn oracle_truth(graph: &PropertyGraph, expr: &BoolExpr, binding: &OracleBinding) -> Option<bool> {
    match expr {
        BoolExpr::Compare { op, lhs, rhs } => {
            let a = oracle_eval(graph, lhs, binding);
            let b = oracle_eval(graph, rhs, binding);
            match op {
                CompareOp::Eq => oracle_equals(&a, &b),
                CompareOp::NotEq => oracle_equals(&a, &b).map(|x| !x),
                CompareOp::Lt => oracle_ordering(&a, &b).map(|o| o == Ordering::Less),
                CompareOp::LtEq => oracle_ordering(&a, &b).map(|o| o != Ordering::Greater),
                CompareOp::Gt => oracle_ordering(&a, &b).map(|o| o == Ordering::Greater),
                CompareOp::GtEq => oracle_ordering(&a, &b).map(|o| o != Ordering::Less),
            }
        }
        BoolExpr::And(l, r) => {
            match (oracle_truth(graph, l, binding), oracle_truth(graph, r, binding)) {
                (Some(false), _) | (_, Some(false)) => Some(false),
                (Some(true), Some(true)) => Some(true),
                _ => None,
            }
        }
        BoolExpr::Or(l, r) => {
            match (oracle_truth(graph, l, binding), oracle_truth(graph, r, binding)) {
                (Some(true), _) | (_, Some(true)) => Some(true),
                (Some(false), Some(false)) => Some(false),
                _ => None,
            }
        }
        BoolExpr::Not(inner) => oracle_truth(graph, inner, binding).map(|x| !x),
    }
}

fn oracle_type_rank(v: &PropertyValue) -> u8 {
    match v {
        PropertyValue::Int(_) | PropertyValue::Float(_) => 0,
        PropertyValue::Text(_) => 1,
        PropertyValue::Bool(_) => 2,
        PropertyValue::List(_) => 3,
        PropertyValue::Null => 4,
    }
}

fn oracle_total_cmp(a: &PropertyValue, b: &PropertyValue) -> Ordering {
    let rank = oracle_type_rank(a).cmp(&oracle_type_rank(b));
    if rank != Ordering::Equal {
        return rank;
    }
    match (a, b) {
        (PropertyValue::Int(x), PropertyValue::Int(y)) => x.cmp(y),
        (PropertyValue::Text(x), PropertyValue::Text(y)) => x.cmp(y),
        (PropertyValue::Bool(x), PropertyValue::Bool(y)) => x.cmp(y),
        (PropertyValue::List(x), PropertyValue::List(y)) => {
            for (ex, ey) in x.iter().zip(y.iter()) {
                let c = oracle_total_cmp(&ex.clone().into(), &ey.clone().into());
                if c != Ordering::Equal {
                    return c;
                }
            }
            x.len().cmp(&y.len())
        }
        (PropertyValue::Null, PropertyValue::Null) => Ordering::Equal,
        _ => {
            let x = oracle_number(a).expect("numeric rank");
            let y = oracle_number(b).expect("numeric rank");
            x.partial_cmp(&y).expect("finite")
        }
    }
}

fn oracle_order_cmp(a: &PropertyValue, b: &PropertyValue, ascending: bool) -> Ordering {
    match (matches!(a, PropertyValue::Null), matches!(b, PropertyValue::Null)) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        (false, false) => {
            let ord = oracle_total_cmp(a, b);
            if ascending {
                ord
            } else {
                ord.reverse()
            }
        }
    }
}

fn first_pattern_variable(ast: &QueryAst) -> Option<String> {
    for clause in &ast.matches {
        if let Some(v) = &clause.path.start.variable {
            return Some(v.clone());
        }
        for (rel, node) in &clause.path.segments {
            if let Some(v) = &rel.variable {
                return Some(v.clone());
            }
            if let Some(v) = &node.variable {
                return Some(v.clone());
            }
        }
    }
    None
}

/// Full oracle pipeline. Rows come back sorted only when the query
/// orders them; otherwise the order is the oracle's own enumeration
/// order and only bag comparisons are meaningful.
pub fn oracle_execute(graph: &PropertyGraph, ast: &QueryAst) -> Vec<Vec<PropertyValue>> {
    let mut rows: Vec<OracleBinding> = vec![OracleBinding::new()];
    for clause in &ast.matches {
        let clause_rows = oracle_clause_bindings(graph, clause);
        rows = oracle_join(rows, clause_rows);
    }
    if let Some(where_expr) = &ast.where_expr {
        rows.retain(|b| oracle_truth(graph, where_expr, b) == Some(true));
    }
    if !ast.order_keys.is_empty() {
        let tie_var = first_pattern_variable(ast);
        rows.sort_by(|a, b| {
            for key in &ast.order_keys {
                let va = oracle_eval(graph, &key.expr, a);
                let vb = oracle_eval(graph, &key.expr, b);
                let ord = oracle_order_cmp(&va, &vb, key.ascending);
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            if let Some(v) = &tie_var {
                let ord = a.get(v).cmp(&b.get(v));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            a.cmp(b)
        });
    }
    if let Some(limit) = ast.limit {
        rows.truncate(limit as usize);
    }
    rows.iter()
        .map(|binding| {
            ast.return_items
                .iter()
                .map(|item| oracle_eval(graph, &item.expr, binding))
                .collect()
        })
        .collect()
}

// --- comparisons ---------------------------------------------------------

/// Canonical text of a row, for multiset comparison. Int and Float
/// intentionally serialize differently, so 1 and 1.0 stay distinct.
pub fn canonical_row(row: &[PropertyValue]) -> String {
    let values: Vec<serde_json::Value> = row.iter().map(PropertyValue::to_json).collect();
    serde_json::to_string(&values).expect("rows serialize")
}

/// Bag equality, plus exact sequence equality when the query has ORDER
/// BY. Returns a description of the first discrepancy.
pub fn compare_with_oracle(graph: &PropertyGraph, ast: &QueryAst) -> Result<(), String> {
    let actual = mrm3::query::execute(graph, ast);
    let expected = oracle_execute(graph, ast);

    let mut actual_bag: Vec<String> = actual.rows.iter().map(|r| canonical_row(r)).collect();
    let mut expected_bag: Vec<String> = expected.iter().map(|r| canonical_row(r)).collect();
    actual_bag.sort();
    expected_bag.sort();
    if actual_bag != expected_bag {
        return Err(format!(
            "bag mismatch\nquery:\n{}\nexecutor: {:?}\noracle:   {:?}",
            mrm3::query::pretty(ast),
            actual_bag,
            expected_bag
        ));
    }
    if !ast.order_keys.is_empty() {
        let actual_seq: Vec<String> = actual.rows.iter().map(|r| canonical_row(r)).collect();
        let expected_seq: Vec<String> = expected.iter().map(|r| canonical_row(r)).collect();
        if actual_seq != expected_seq {
            return Err(format!(
                "ordered sequence mismatch\nquery:\n{}\nexecutor: {:?}\noracle:   {:?}",
                mrm3::query::pretty(ast),
                actual_seq,
                expected_seq
            ));
        }
    }
    Ok(())
}

/// The energy-ranking query text used across tests, byte for byte the
/// reference selection query.
pub const ENERGY_RANKING_QUERY: &str = "MATCH (m:Model)-[:TRAINED_ON]->(d:Dataset)
MATCH (m)-[:UTILIZES]->(a:ModelArchitecture)
MATCH (i:ModelInference)-[:INFERENCE_ON]->(m)
RETURN m.name,
       a.type as architecture,
       d.name as dataset,
       i.energyConsumption,
       i.flops
ORDER BY i.energyConsumption ASC
";
