//! Query AST and its canonical text form. `pretty` prints a query that
//! reparses to a structurally identical AST.

use std::fmt::Write as _;

use crate::ontology::{NodeLabel, RelationType};
use crate::store::value::format_float;

#[derive(Debug, Clone, PartialEq)]
pub struct QueryAst {
    pub matches: Vec<MatchClause>,
    pub where_expr: Option<BoolExpr>,
    pub return_items: Vec<ReturnItem>,
    pub order_keys: Vec<OrderKey>,
    pub limit: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchClause {
    pub path: PathPattern,
}

/// A linear pattern: node, then zero or more (relationship, node) hops.
#[derive(Debug, Clone, PartialEq)]
pub struct PathPattern {
    pub start: NodePattern,
    pub segments: Vec<(RelPattern, NodePattern)>,
}

impl PathPattern {
    pub fn node_patterns(&self) -> impl Iterator<Item = &NodePattern> {
        std::iter::once(&self.start).chain(self.segments.iter().map(|(_, n)| n))
    }

    pub fn rel_patterns(&self) -> impl Iterator<Item = &RelPattern> {
        self.segments.iter().map(|(r, _)| r)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct NodePattern {
    pub variable: Option<String>,
    pub label: Option<NodeLabel>,
    /// Inline property-equality constraints.
    pub properties: Vec<(String, Literal)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternDirection {
    LeftToRight,
    RightToLeft,
    Undirected,
}

impl PatternDirection {
    pub fn flipped(self) -> PatternDirection {
        match self {
            PatternDirection::LeftToRight => PatternDirection::RightToLeft,
            PatternDirection::RightToLeft => PatternDirection::LeftToRight,
            PatternDirection::Undirected => PatternDirection::Undirected,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelPattern {
    pub variable: Option<String>,
    pub rel_type: Option<RelationType>,
    pub direction: PatternDirection,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Literal {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Text(String),
}

/// Value-producing expression: usable in comparisons, RETURN and ORDER BY.
#[derive(Debug, Clone, PartialEq)]
pub enum ValueExpr {
    Literal(Literal),
    /// A bare pattern variable; projects the entity's internal id.
    Variable(String),
    /// `variable.property`; null when the property is absent.
    Property { variable: String, property: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompareOp {
    Eq,
    NotEq,
    Lt,
    LtEq,
    Gt,
    GtEq,
}

impl CompareOp {
    pub fn as_str(self) -> &'static str {
        match self {
            CompareOp::Eq => "=",
            CompareOp::NotEq => "<>",
            CompareOp::Lt => "<",
            CompareOp::LtEq => "<=",
            CompareOp::Gt => ">",
            CompareOp::GtEq => ">=",
        }
    }
}

/// Boolean expression of a WHERE clause.
#[derive(Debug, Clone, PartialEq)]
pub enum BoolExpr {
    Compare {
        op: CompareOp,
        lhs: ValueExpr,
        rhs: ValueExpr,
    },
    And(Box<BoolExpr>, Box<BoolExpr>),
    Or(Box<BoolExpr>, Box<BoolExpr>),
    Not(Box<BoolExpr>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReturnItem {
    pub expr: ValueExpr,
    pub alias: Option<String>,
}

impl ReturnItem {
    /// The result column name: the alias when given, otherwise the
    /// expression text.
    pub fn column_name(&self) -> String {
        self.alias
            .clone()
            .unwrap_or_else(|| value_expr_text(&self.expr))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderKey {
    pub expr: ValueExpr,
    pub ascending: bool,
}

pub fn literal_text(literal: &Literal) -> String {
    match literal {
        Literal::Null => "null".to_string(),
        Literal::Bool(b) => b.to_string(),
        Literal::Int(i) => i.to_string(),
        Literal::Float(f) => format_float(*f),
        Literal::Text(s) => quote_text(s),
    }
}

pub fn quote_text(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('\'');
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\'' => out.push_str("\\'"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            other => out.push(other),
        }
    }
    out.push('\'');
    out
}

pub fn value_expr_text(expr: &ValueExpr) -> String {
    match expr {
        ValueExpr::Literal(l) => literal_text(l),
        ValueExpr::Variable(v) => v.clone(),
        ValueExpr::Property { variable, property } => format!("{}.{}", variable, property),
    }
}

fn precedence(expr: &BoolExpr) -> u8 {
    match expr {
        BoolExpr::Or(..) => 1,
        BoolExpr::And(..) => 2,
        BoolExpr::Not(..) => 3,
        BoolExpr::Compare { .. } => 4,
    }
}

pub fn bool_expr_text(expr: &BoolExpr) -> String {
    fn child(expr: &BoolExpr, min_prec: u8) -> String {
        if precedence(expr) < min_prec {
            format!("({})", bool_expr_text(expr))
        } else {
            bool_expr_text(expr)
        }
    }
    match expr {
        BoolExpr::Compare { op, lhs, rhs } => format!(
            "{} {} {}",
            value_expr_text(lhs),
            op.as_str(),
            value_expr_text(rhs)
        ),
        // Right child needs parens at equal precedence so the
        // left-associative reparse rebuilds the same tree.
        BoolExpr::And(l, r) => format!("{} AND {}", child(l, 2), child(r, 3)),
        BoolExpr::Or(l, r) => format!("{} OR {}", child(l, 1), child(r, 2)),
        BoolExpr::Not(inner) => format!("NOT {}", child(inner, 3)),
    }
}

pub fn node_pattern_text(pattern: &NodePattern) -> String {
    let mut out = String::from("(");
    if let Some(v) = &pattern.variable {
        out.push_str(v);
    }
    if let Some(label) = pattern.label {
        let _ = write!(out, ":{}", label);
    }
    if !pattern.properties.is_empty() {
        if pattern.variable.is_some() || pattern.label.is_some() {
            out.push(' ');
        }
        out.push('{');
        for (i, (name, literal)) in pattern.properties.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            let _ = write!(out, "{}: {}", name, literal_text(literal));
        }
        out.push('}');
    }
    out.push(')');
    out
}

pub fn rel_pattern_text(pattern: &RelPattern) -> String {
    let mut detail = String::new();
    if let Some(v) = &pattern.variable {
        detail.push_str(v);
    }
    if let Some(t) = pattern.rel_type {
        let _ = write!(detail, ":{}", t);
    }
    let body = if detail.is_empty() {
        String::new()
    } else {
        format!("[{}]", detail)
    };
    match pattern.direction {
        PatternDirection::LeftToRight => format!("-{}->", body),
        PatternDirection::RightToLeft => format!("<-{}-", body),
        PatternDirection::Undirected => format!("-{}-", body),
    }
}

pub fn path_pattern_text(path: &PathPattern) -> String {
    let mut out = node_pattern_text(&path.start);
    for (rel, node) in &path.segments {
        out.push_str(&rel_pattern_text(rel));
        out.push_str(&node_pattern_text(node));
    }
    out
}

/// Canonical text of a query. Reparsing yields a structurally identical
/// AST.
pub fn pretty(ast: &QueryAst) -> String {
    let mut out = String::new();
    for clause in &ast.matches {
        let _ = writeln!(out, "MATCH {}", path_pattern_text(&clause.path));
    }
    if let Some(expr) = &ast.where_expr {
        let _ = writeln!(out, "WHERE {}", bool_expr_text(expr));
    }
    let items: Vec<String> = ast
        .return_items
        .iter()
        .map(|item| match &item.alias {
            Some(alias) => format!("{} AS {}", value_expr_text(&item.expr), alias),
            None => value_expr_text(&item.expr),
        })
        .collect();
    let _ = write!(out, "RETURN {}", items.join(", "));
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
        let _ = write!(out, "\nORDER BY {}", keys.join(", "));
    }
    if let Some(limit) = ast.limit {
        let _ = write!(out, "\nLIMIT {}", limit);
    }
    out.push('\n');
    out
}
