//! Parser for the MERGE-statement sublanguage that `export_cypher`
//! emits. Used as a linter: the exporter's output must parse cleanly and
//! reference only known labels, types and bound variables.

use super::ast::{Literal, NodePattern};
use super::parser::Parser;
use super::token::{tokenize, Keyword, TokenKind};
use super::ParseError;
use crate::ontology::RelationType;

/// A SET value: a scalar literal or a flat list of them.
#[derive(Debug, Clone, PartialEq)]
pub enum ScriptValue {
    Scalar(Literal),
    List(Vec<Literal>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SetItem {
    pub variable: String,
    pub property: String,
    pub value: ScriptValue,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScriptStatement {
    /// `MERGE (v:Label {key: literal, ...}) SET v.prop = literal, ...`
    MergeNode {
        pattern: NodePattern,
        set_items: Vec<SetItem>,
    },
    /// `MATCH (a:L {..}), (b:L {..}) MERGE (a)-[:TYPE]->(b)`
    MergeRelationship {
        anchors: Vec<NodePattern>,
        source: String,
        rel_type: RelationType,
        target: String,
    },
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct MergeScript {
    pub statements: Vec<ScriptStatement>,
}

impl MergeScript {
    pub fn node_statement_count(&self) -> usize {
        self.statements
            .iter()
            .filter(|s| matches!(s, ScriptStatement::MergeNode { .. }))
            .count()
    }

    pub fn relationship_statement_count(&self) -> usize {
        self.statements
            .iter()
            .filter(|s| matches!(s, ScriptStatement::MergeRelationship { .. }))
            .count()
    }
}

/// Parses a MERGE script. Statements end with `;`; `//` comments are
/// skipped by the tokenizer.
pub fn parse_merge_script(text: &str) -> Result<MergeScript, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser::new(text, tokens);
    let mut statements = Vec::new();
    loop {
        match parser.peek() {
            None => break,
            Some(TokenKind::Keyword(Keyword::Merge)) => {
                statements.push(node_statement(&mut parser)?);
            }
            Some(TokenKind::Keyword(Keyword::Match)) => {
                statements.push(relationship_statement(&mut parser)?);
            }
            _ => {
                return Err(parser.error_here(
                    "statement must start with MERGE or MATCH",
                    &["MERGE", "MATCH"],
                ))
            }
        }
    }
    Ok(MergeScript { statements })
}

fn node_statement(parser: &mut Parser) -> Result<ScriptStatement, ParseError> {
    parser.expect_keyword(Keyword::Merge)?;
    let pattern = merge_node_pattern(parser)?;
    let merge_var = pattern.variable.clone();
    let mut set_items = Vec::new();
    if parser.eat(&TokenKind::Keyword(Keyword::Set)) {
        loop {
            let (variable, line, column) = parser.ident("variable")?;
            if merge_var.as_deref() != Some(variable.as_str()) {
                return Err(ParseError {
                    line,
                    column,
                    message: format!(
                        "SET references {} but the MERGE pattern binds {}",
                        variable,
                        merge_var.as_deref().unwrap_or("no variable")
                    ),
                    expected: Vec::new(),
                });
            }
            parser.expect(&TokenKind::Dot, ".")?;
            let (property, _, _) = parser.ident("property name")?;
            parser.expect(&TokenKind::Eq, "=")?;
            let value = script_value(parser)?;
            set_items.push(SetItem {
                variable,
                property,
                value,
            });
            if !parser.eat(&TokenKind::Comma) {
                break;
            }
        }
    }
    parser.expect(&TokenKind::Semicolon, ";")?;
    Ok(ScriptStatement::MergeNode { pattern, set_items })
}

fn script_value(parser: &mut Parser) -> Result<ScriptValue, ParseError> {
    if parser.eat(&TokenKind::LBracket) {
        let mut items = Vec::new();
        if parser.peek() != Some(&TokenKind::RBracket) {
            loop {
                items.push(parser.literal()?);
                if !parser.eat(&TokenKind::Comma) {
                    break;
                }
            }
        }
        parser.expect(&TokenKind::RBracket, "]")?;
        return Ok(ScriptValue::List(items));
    }
    Ok(ScriptValue::Scalar(parser.literal()?))
}

fn merge_node_pattern(parser: &mut Parser) -> Result<NodePattern, ParseError> {
    let (line, column) = parser.position();
    let pattern = parser.node_pattern()?;
    if pattern.label.is_none() {
        return Err(ParseError {
            line,
            column,
            message: "MERGE node pattern needs a label".to_string(),
            expected: Vec::new(),
        });
    }
    Ok(pattern)
}

fn relationship_statement(parser: &mut Parser) -> Result<ScriptStatement, ParseError> {
    parser.expect_keyword(Keyword::Match)?;
    let mut anchors = vec![merge_node_pattern(parser)?];
    while parser.eat(&TokenKind::Comma) {
        anchors.push(merge_node_pattern(parser)?);
    }
    parser.expect_keyword(Keyword::Merge)?;

    parser.expect(&TokenKind::LParen, "(")?;
    let (source, source_line, source_column) = parser.ident("variable")?;
    parser.expect(&TokenKind::RParen, ")")?;
    parser.expect(&TokenKind::Minus, "-")?;
    parser.expect(&TokenKind::LBracket, "[")?;
    parser.expect(&TokenKind::Colon, ":")?;
    let (type_name, type_line, type_column) = parser.ident("relationship type")?;
    let rel_type = type_name.parse::<RelationType>().map_err(|_| ParseError {
        line: type_line,
        column: type_column,
        message: format!("unknown relationship type {}", type_name),
        expected: RelationType::ALL
            .iter()
            .map(|t| t.as_str().to_string())
            .collect(),
    })?;
    parser.expect(&TokenKind::RBracket, "]")?;
    parser.expect(&TokenKind::Minus, "-")?;
    parser.expect(&TokenKind::Gt, ">")?;
    parser.expect(&TokenKind::LParen, "(")?;
    let (target, target_line, target_column) = parser.ident("variable")?;
    parser.expect(&TokenKind::RParen, ")")?;
    parser.expect(&TokenKind::Semicolon, ";")?;

    let is_anchored = |name: &str| {
        anchors
            .iter()
            .any(|a| a.variable.as_deref() == Some(name))
    };
    if !is_anchored(&source) {
        return Err(ParseError {
            line: source_line,
            column: source_column,
            message: format!("variable {} is not bound by the MATCH anchors", source),
            expected: Vec::new(),
        });
    }
    if !is_anchored(&target) {
        return Err(ParseError {
            line: target_line,
            column: target_column,
            message: format!("variable {} is not bound by the MATCH anchors", target),
            expected: Vec::new(),
        });
    }
    Ok(ScriptStatement::MergeRelationship {
        anchors,
        source,
        rel_type,
        target,
    })
}
