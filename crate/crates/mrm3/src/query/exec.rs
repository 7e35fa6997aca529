//! Query execution.
//!
//! Semantics, in order: every MATCH clause independently produces its bag
//! of bindings (pattern matching honors labels, types, directions and
//! per-clause relationship-uniqueness); clauses combine by natural join
//! on shared variables; WHERE filters rows with null-propagating
//! comparisons; ORDER BY sorts with the numeric < text < boolean < list
//! < null type ranking, nulls last within a key, ties broken by the
//! ascending internal id of the first bound variable; LIMIT truncates;
//! RETURN projects.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::ast::*;
use crate::store::{Direction, NodeId, PropertyGraph, PropertyValue, RelationshipId};

/// A graph entity bound to a pattern variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Entity {
    Node(NodeId),
    Relationship(RelationshipId),
}

impl Entity {
    fn internal_id(self) -> (u8, u64) {
        match self {
            Entity::Node(id) => (0, id.0),
            Entity::Relationship(id) => (1, id.0),
        }
    }
}

/// One row of matched variables.
pub type Binding = BTreeMap<String, Entity>;

/// Ordered bag of result rows.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<PropertyValue>>,
}

impl ResultTable {
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Executes a parsed query against a read view of the graph.
pub fn execute(graph: &PropertyGraph, ast: &QueryAst) -> ResultTable {
    let mut rows: Vec<Binding> = vec![Binding::new()];
    for clause in &ast.matches {
        let clause_rows = match_clause(graph, clause);
        rows = join(rows, clause_rows);
        if rows.is_empty() {
            break;
        }
    }

    if let Some(where_expr) = &ast.where_expr {
        rows.retain(|binding| eval_bool(graph, where_expr, binding) == Truth::True);
    }

    if !ast.order_keys.is_empty() {
        let tie_break_var = first_pattern_variable(ast);
        rows.sort_by(|a, b| {
            for key in &ast.order_keys {
                let va = eval_value(graph, &key.expr, a);
                let vb = eval_value(graph, &key.expr, b);
                let ordering = order_by_cmp(&va, &vb, key.ascending);
                if ordering != Ordering::Equal {
                    return ordering;
                }
            }
            // deterministic tie-break: ascending id of the first bound
            // variable, then the remaining bindings
            if let Some(var) = &tie_break_var {
                let ia = a.get(var).map(|e| e.internal_id());
                let ib = b.get(var).map(|e| e.internal_id());
                let ordering = ia.cmp(&ib);
                if ordering != Ordering::Equal {
                    return ordering;
                }
            }
            a.cmp(b)
        });
    }

    if let Some(limit) = ast.limit {
        rows.truncate(limit as usize);
    }

    let columns: Vec<String> = ast.return_items.iter().map(ReturnItem::column_name).collect();
    let rows = rows
        .iter()
        .map(|binding| {
            ast.return_items
                .iter()
                .map(|item| eval_value(graph, &item.expr, binding))
                .collect()
        })
        .collect();
    ResultTable { columns, rows }
}

/// First variable that appears in the query's patterns, in textual order.
fn first_pattern_variable(ast: &QueryAst) -> Option<String> {
    for clause in &ast.matches {
        let path = &clause.path;
        if let Some(v) = &path.start.variable {
            return Some(v.clone());
        }
        for (rel, node) in &path.segments {
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

/// Nodes admissible for a node pattern, ascending id.
pub(super) fn node_candidates(graph: &PropertyGraph, pattern: &NodePattern) -> Vec<NodeId> {
    let pool: Vec<&crate::store::GraphNode> = match pattern.label {
        Some(label) => graph.nodes_with_label(label),
        None => graph.nodes().collect(),
    };
    let mut ids: Vec<NodeId> = pool
        .into_iter()
        .filter(|node| node_satisfies(graph, node.id, pattern))
        .map(|node| node.id)
        .collect();
    ids.sort_unstable();
    ids
}

fn node_satisfies(graph: &PropertyGraph, id: NodeId, pattern: &NodePattern) -> bool {
    let node = match graph.node(id) {
        Some(node) => node,
        None => return false,
    };
    if let Some(label) = pattern.label {
        if node.label != label {
            return false;
        }
    }
    pattern.properties.iter().all(|(name, literal)| {
        let wanted = literal_value(literal);
        match node.properties.get(name) {
            Some(actual) => equals(actual, &wanted) == Truth::True,
            None => false,
        }
    })
}

/// Orients a path so enumeration starts from the end with the fewest
/// candidates (ties keep the written orientation). Returns the oriented
/// path and the start candidate count.
pub(super) fn orient_path(graph: &PropertyGraph, path: &PathPattern) -> (PathPattern, usize) {
    let forward = node_candidates(graph, &path.start).len();
    if path.segments.is_empty() {
        return (path.clone(), forward);
    }
    let last = &path.segments.last().expect("nonempty").1;
    let backward = node_candidates(graph, last).len();
    if backward < forward {
        (reverse_path(path), backward)
    } else {
        (path.clone(), forward)
    }
}

fn reverse_path(path: &PathPattern) -> PathPattern {
    let mut nodes: Vec<NodePattern> = path.node_patterns().cloned().collect();
    let mut rels: Vec<RelPattern> = path.rel_patterns().cloned().collect();
    nodes.reverse();
    rels.reverse();
    let start = nodes.remove(0);
    let segments = rels
        .into_iter()
        .map(|rel| RelPattern {
            direction: rel.direction.flipped(),
            ..rel
        })
        .zip(nodes)
        .collect();
    PathPattern { start, segments }
}

/// All bindings of one MATCH clause, in deterministic order.
pub(super) fn match_clause(graph: &PropertyGraph, clause: &MatchClause) -> Vec<Binding> {
    let (path, _) = orient_path(graph, &clause.path);
    let mut results = Vec::new();
    for start in node_candidates(graph, &path.start) {
        let mut binding = Binding::new();
        if let Some(v) = &path.start.variable {
            binding.insert(v.clone(), Entity::Node(start));
        }
        extend(graph, &path.segments, 0, start, binding, &mut Vec::new(), &mut results);
    }
    results
}

fn extend(
    graph: &PropertyGraph,
    segments: &[(RelPattern, NodePattern)],
    position: usize,
    current: NodeId,
    binding: Binding,
    used_rels: &mut Vec<RelationshipId>,
    results: &mut Vec<Binding>,
) {
    if position == segments.len() {
        results.push(binding);
        return;
    }
    let (rel_pattern, node_pattern) = &segments[position];
    let direction = match rel_pattern.direction {
        PatternDirection::LeftToRight => Direction::Outgoing,
        PatternDirection::RightToLeft => Direction::Incoming,
        PatternDirection::Undirected => Direction::Both,
    };
    let incident = graph
        .neighbors(current, direction, rel_pattern.rel_type)
        .expect("current node exists");
    // an undirected hop lists a self-loop twice (once per direction);
    // a relationship still matches a pattern hop once
    let mut tried: Vec<RelationshipId> = Vec::new();
    for (rel, neighbor) in incident {
        if used_rels.contains(&rel.id) || tried.contains(&rel.id) {
            continue;
        }
        tried.push(rel.id);
        if !node_satisfies(graph, neighbor.id, node_pattern) {
            continue;
        }
        // unify repeated node variables within the clause
        if let Some(v) = &node_pattern.variable {
            if let Some(existing) = binding.get(v) {
                if *existing != Entity::Node(neighbor.id) {
                    continue;
                }
            }
        }
        let mut next_binding = binding.clone();
        if let Some(v) = &rel_pattern.variable {
            next_binding.insert(v.clone(), Entity::Relationship(rel.id));
        }
        if let Some(v) = &node_pattern.variable {
            next_binding.insert(v.clone(), Entity::Node(neighbor.id));
        }
        used_rels.push(rel.id);
        extend(
            graph,
            segments,
            position + 1,
            neighbor.id,
            next_binding,
            used_rels,
            results,
        );
        used_rels.pop();
    }
}

/// Natural join on shared variables, bag semantics, left-major order.
fn join(left: Vec<Binding>, right: Vec<Binding>) -> Vec<Binding> {
    if left.is_empty() || right.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for l in &left {
        for r in &right {
            let compatible = r
                .iter()
                .all(|(var, entity)| l.get(var).is_none_or(|e| e == entity));
            if compatible {
                let mut merged = l.clone();
                for (var, entity) in r {
                    merged.insert(var.clone(), *entity);
                }
                out.push(merged);
            }
        }
    }
    out
}

// --- value evaluation ---------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) enum Truth {
    True,
    False,
    Unknown,
}

impl Truth {
    fn not(self) -> Truth {
        match self {
            Truth::True => Truth::False,
            Truth::False => Truth::True,
            Truth::Unknown => Truth::Unknown,
        }
    }

    fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::True, Truth::True) => Truth::True,
            _ => Truth::Unknown,
        }
    }

    fn or(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::True, _) | (_, Truth::True) => Truth::True,
            (Truth::False, Truth::False) => Truth::False,
            _ => Truth::Unknown,
        }
    }

    fn from_bool(b: bool) -> Truth {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }
}

pub(super) fn literal_value(literal: &Literal) -> PropertyValue {
    match literal {
        Literal::Null => PropertyValue::Null,
        Literal::Bool(b) => PropertyValue::Bool(*b),
        Literal::Int(i) => PropertyValue::Int(*i),
        Literal::Float(f) => PropertyValue::Float(*f),
        Literal::Text(s) => PropertyValue::Text(s.clone()),
    }
}

pub(super) fn eval_value(
    graph: &PropertyGraph,
    expr: &ValueExpr,
    binding: &Binding,
) -> PropertyValue {
    match expr {
        ValueExpr::Literal(literal) => literal_value(literal),
        ValueExpr::Variable(v) => match binding.get(v) {
            Some(entity) => PropertyValue::Int(entity.internal_id().1 as i64),
            None => PropertyValue::Null,
        },
        ValueExpr::Property { variable, property } => match binding.get(variable) {
            Some(Entity::Node(id)) => graph
                .node(*id)
                .and_then(|n| n.properties.get(property))
                .cloned()
                .unwrap_or(PropertyValue::Null),
            Some(Entity::Relationship(id)) => graph
                .relationship(*id)
                .and_then(|r| r.properties.get(property))
                .cloned()
                .unwrap_or(PropertyValue::Null),
            None => PropertyValue::Null,
        },
    }
}

pub(super) fn eval_bool(graph: &PropertyGraph, expr: &BoolExpr, binding: &Binding) -> Truth {
    match expr {
        BoolExpr::Compare { op, lhs, rhs } => {
            let a = eval_value(graph, lhs, binding);
            let b = eval_value(graph, rhs, binding);
            compare(*op, &a, &b)
        }
        BoolExpr::And(l, r) => eval_bool(graph, l, binding).and(eval_bool(graph, r, binding)),
        BoolExpr::Or(l, r) => eval_bool(graph, l, binding).or(eval_bool(graph, r, binding)),
        BoolExpr::Not(inner) => eval_bool(graph, inner, binding).not(),
    }
}

fn as_number(value: &PropertyValue) -> Option<f64> {
    match value {
        PropertyValue::Int(i) => Some(*i as f64),
        PropertyValue::Float(f) => Some(*f),
        _ => None,
    }
}

/// Value equality: null propagates to unknown, the numeric family
/// compares by value, and values of different families are simply not
/// equal.
pub(super) fn equals(a: &PropertyValue, b: &PropertyValue) -> Truth {
    if a.is_null() || b.is_null() {
        return Truth::Unknown;
    }
    if let (Some(x), Some(y)) = (as_number(a), as_number(b)) {
        return Truth::from_bool(x == y);
    }
    match (a, b) {
        (PropertyValue::Text(x), PropertyValue::Text(y)) => Truth::from_bool(x == y),
        (PropertyValue::Bool(x), PropertyValue::Bool(y)) => Truth::from_bool(x == y),
        (PropertyValue::List(x), PropertyValue::List(y)) => Truth::from_bool(x == y),
        _ => Truth::False,
    }
}

/// Ordering comparison within one family; anything else is unknown.
fn ordering_of(a: &PropertyValue, b: &PropertyValue) -> Option<Ordering> {
    if a.is_null() || b.is_null() {
        return None;
    }
    if let (Some(x), Some(y)) = (as_number(a), as_number(b)) {
        return x.partial_cmp(&y);
    }
    match (a, b) {
        (PropertyValue::Text(x), PropertyValue::Text(y)) => Some(x.cmp(y)),
        (PropertyValue::Bool(x), PropertyValue::Bool(y)) => Some(x.cmp(y)),
        _ => None,
    }
}

pub(super) fn compare(op: CompareOp, a: &PropertyValue, b: &PropertyValue) -> Truth {
    match op {
        CompareOp::Eq => equals(a, b),
        CompareOp::NotEq => equals(a, b).not(),
        CompareOp::Lt => match ordering_of(a, b) {
            Some(ord) => Truth::from_bool(ord == Ordering::Less),
            None => Truth::Unknown,
        },
        CompareOp::LtEq => match ordering_of(a, b) {
            Some(ord) => Truth::from_bool(ord != Ordering::Greater),
            None => Truth::Unknown,
        },
        CompareOp::Gt => match ordering_of(a, b) {
            Some(ord) => Truth::from_bool(ord == Ordering::Greater),
            None => Truth::Unknown,
        },
        CompareOp::GtEq => match ordering_of(a, b) {
            Some(ord) => Truth::from_bool(ord != Ordering::Less),
            None => Truth::Unknown,
        },
    }
}

fn type_rank(value: &PropertyValue) -> u8 {
    match value {
        PropertyValue::Int(_) | PropertyValue::Float(_) => 0,
        PropertyValue::Text(_) => 1,
        PropertyValue::Bool(_) => 2,
        PropertyValue::List(_) => 3,
        PropertyValue::Null => 4,
    }
}

/// Total order over values for sorting: type rank first, then value.
pub(super) fn total_cmp(a: &PropertyValue, b: &PropertyValue) -> Ordering {
    let rank = type_rank(a).cmp(&type_rank(b));
    if rank != Ordering::Equal {
        return rank;
    }
    match (a, b) {
        (PropertyValue::Int(x), PropertyValue::Int(y)) => x.cmp(y),
        (PropertyValue::Text(x), PropertyValue::Text(y)) => x.cmp(y),
        (PropertyValue::Bool(x), PropertyValue::Bool(y)) => x.cmp(y),
        (PropertyValue::List(x), PropertyValue::List(y)) => {
            for (ex, ey) in x.iter().zip(y.iter()) {
                let c = total_cmp(&ex.clone().into(), &ey.clone().into());
                if c != Ordering::Equal {
                    return c;
                }
            }
            x.len().cmp(&y.len())
        }
        (PropertyValue::Null, PropertyValue::Null) => Ordering::Equal,
        _ => {
            // mixed Int/Float
            let x = as_number(a).expect("numeric rank");
            let y = as_number(b).expect("numeric rank");
            x.partial_cmp(&y).expect("stored numbers are finite")
        }
    }
}

/// ORDER BY comparison for one key: nulls last regardless of direction,
/// the rest per `total_cmp`, reversed for DESC.
pub(super) fn order_by_cmp(a: &PropertyValue, b: &PropertyValue, ascending: bool) -> Ordering {
    match (a.is_null(), b.is_null()) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        (false, false) => {
            let ord = total_cmp(a, b);
            if ascending {
                ord
            } else {
                ord.reverse()
            }
        }
    }
}
