//! Recursive-descent parser for the query grammar (see docs/query-grammar.md).
//!
//! Besides syntax, parsing enforces the semantic rules that make an AST
//! executable: labels and relationship types must belong to the closed
//! enumerations, every referenced variable must be bound by a MATCH
//! pattern, aliases must be unique, and a variable cannot stand for a
//! node in one place and a relationship in another.

use std::collections::{HashMap, HashSet};

use super::ast::*;
use super::token::{tokenize, Keyword, Token, TokenKind};
use super::ParseError;
use crate::ontology::{NodeLabel, RelationType};

pub fn parse(text: &str) -> Result<QueryAst, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser::new(text, tokens);
    let ast = parser.query()?;
    parser.expect_end()?;
    check_semantics(&ast)?;
    Ok(ast)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VarKind {
    Node,
    Rel,
}

pub(super) struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end_line: u32,
    end_column: u32,
}

impl Parser {
    pub(super) fn new(text: &str, tokens: Vec<Token>) -> Parser {
        let end_line = text.lines().count().max(1) as u32;
        let end_column = text.lines().last().map_or(1, |l| l.chars().count() + 1) as u32;
        Parser {
            tokens,
            pos: 0,
            end_line,
            end_column,
        }
    }

    pub(super) fn peek(&self) -> Option<&TokenKind> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    fn peek2(&self) -> Option<&TokenKind> {
        self.tokens.get(self.pos + 1).map(|t| &t.kind)
    }

    fn bump(&mut self) -> Option<&Token> {
        let token = self.tokens.get(self.pos);
        if token.is_some() {
            self.pos += 1;
        }
        token
    }

    pub(super) fn position(&self) -> (u32, u32) {
        match self.tokens.get(self.pos) {
            Some(t) => (t.line, t.column),
            None => (self.end_line, self.end_column),
        }
    }

    pub(super) fn error_here(&self, message: impl Into<String>, expected: &[&str]) -> ParseError {
        let (line, column) = self.position();
        let message = message.into();
        let message = if expected.is_empty() {
            message
        } else {
            format!("{} (expected {})", message, expected.join(", "))
        };
        ParseError {
            line,
            column,
            message,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(kind) => format!("found {}", kind),
            None => "found end of input".to_string(),
        }
    }

    pub(super) fn expect(&mut self, kind: &TokenKind, expected: &str) -> Result<(), ParseError> {
        if self.peek() == Some(kind) {
            self.bump();
            Ok(())
        } else {
            Err(self.error_here(self.found(), &[expected]))
        }
    }

    pub(super) fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek() == Some(kind) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn eat_keyword(&mut self, keyword: Keyword) -> bool {
        self.eat(&TokenKind::Keyword(keyword))
    }

    pub(super) fn expect_keyword(&mut self, keyword: Keyword) -> Result<(), ParseError> {
        self.expect(&TokenKind::Keyword(keyword), keyword.as_str())
    }

    pub(super) fn ident(&mut self, what: &str) -> Result<(String, u32, u32), ParseError> {
        match self.tokens.get(self.pos) {
            Some(Token {
                kind: TokenKind::Ident(name),
                line,
                column,
            }) => {
                let result = (name.clone(), *line, *column);
                self.pos += 1;
                Ok(result)
            }
            _ => Err(self.error_here(self.found(), &[what])),
        }
    }

    pub(super) fn expect_end(&self) -> Result<(), ParseError> {
        if self.pos == self.tokens.len() {
            Ok(())
        } else {
            Err(self.error_here(self.found(), &["end of query"]))
        }
    }

    fn query(&mut self) -> Result<QueryAst, ParseError> {
        let mut matches = Vec::new();
        while self.eat_keyword(Keyword::Match) {
            matches.push(MatchClause {
                path: self.path_pattern()?,
            });
        }
        let where_expr = if self.eat_keyword(Keyword::Where) {
            Some(self.bool_expr()?)
        } else {
            None
        };
        if self.peek() != Some(&TokenKind::Keyword(Keyword::Return)) {
            let expected: &[&str] = if matches.is_empty() {
                &["MATCH", "RETURN"]
            } else if where_expr.is_none() {
                &["MATCH", "WHERE", "RETURN"]
            } else {
                &["RETURN"]
            };
            return Err(self.error_here(self.found(), expected));
        }
        self.bump();
        let mut return_items = vec![self.return_item()?];
        while self.eat(&TokenKind::Comma) {
            return_items.push(self.return_item()?);
        }
        let mut order_keys = Vec::new();
        if self.eat_keyword(Keyword::Order) {
            self.expect_keyword(Keyword::By)?;
            loop {
                let expr = self.value_expr()?;
                let ascending = if self.eat_keyword(Keyword::Desc) {
                    false
                } else {
                    self.eat_keyword(Keyword::Asc);
                    true
                };
                order_keys.push(OrderKey { expr, ascending });
                if !self.eat(&TokenKind::Comma) {
                    break;
                }
            }
        }
        let limit = if self.eat_keyword(Keyword::Limit) {
            let (line, column) = self.position();
            match self.bump().map(|t| t.kind.clone()) {
                Some(TokenKind::Integer(n)) if n > 0 => Some(n as u64),
                Some(TokenKind::Integer(n)) => {
                    return Err(ParseError {
                        line,
                        column,
                        message: format!("LIMIT must be a positive integer, got {}", n),
                        expected: vec!["positive integer".to_string()],
                    })
                }
                _ => {
                    return Err(ParseError {
                        line,
                        column,
                        message: "LIMIT needs a positive integer".to_string(),
                        expected: vec!["positive integer".to_string()],
                    })
                }
            }
        } else {
            None
        };
        Ok(QueryAst {
            matches,
            where_expr,
            return_items,
            order_keys,
            limit,
        })
    }

    pub(super) fn path_pattern(&mut self) -> Result<PathPattern, ParseError> {
        let start = self.node_pattern()?;
        let mut segments = Vec::new();
        while matches!(self.peek(), Some(TokenKind::Minus) | Some(TokenKind::Lt)) {
            let rel = self.rel_pattern()?;
            let node = self.node_pattern()?;
            segments.push((rel, node));
        }
        Ok(PathPattern { start, segments })
    }

    pub(super) fn node_pattern(&mut self) -> Result<NodePattern, ParseError> {
        self.expect(&TokenKind::LParen, "(")?;
        let variable = match self.peek() {
            Some(TokenKind::Ident(_)) => {
                let (name, _, _) = self.ident("variable")?;
                Some(name)
            }
            _ => None,
        };
        let label = if self.eat(&TokenKind::Colon) {
            let (name, line, column) = self.ident("node label")?;
            match name.parse::<NodeLabel>() {
                Ok(label) => Some(label),
                Err(_) => {
                    return Err(ParseError {
                        line,
                        column,
                        message: format!("unknown node label {}", name),
                        expected: NodeLabel::ALL.iter().map(|l| l.as_str().to_string()).collect(),
                    })
                }
            }
        } else {
            None
        };
        let properties = if self.peek() == Some(&TokenKind::LBrace) {
            self.property_map()?
        } else {
            Vec::new()
        };
        self.expect(&TokenKind::RParen, ")")?;
        Ok(NodePattern {
            variable,
            label,
            properties,
        })
    }

    pub(super) fn property_map(&mut self) -> Result<Vec<(String, Literal)>, ParseError> {
        self.expect(&TokenKind::LBrace, "{")?;
        let mut properties = Vec::new();
        if self.peek() != Some(&TokenKind::RBrace) {
            loop {
                let (name, _, _) = self.ident("property name")?;
                self.expect(&TokenKind::Colon, ":")?;
                let literal = self.literal()?;
                properties.push((name, literal));
                if !self.eat(&TokenKind::Comma) {
                    break;
                }
            }
        }
        self.expect(&TokenKind::RBrace, "}")?;
        Ok(properties)
    }

    fn rel_pattern(&mut self) -> Result<RelPattern, ParseError> {
        // "<-[..]-" | "-[..]->" | "-[..]-" and the bracketless forms
        let left_arrow = self.eat(&TokenKind::Lt);
        self.expect(&TokenKind::Minus, "-")?;
        let (variable, rel_type) = if self.eat(&TokenKind::LBracket) {
            let variable = match self.peek() {
                Some(TokenKind::Ident(_)) => {
                    let (name, _, _) = self.ident("relationship variable")?;
                    Some(name)
                }
                _ => None,
            };
            let rel_type = if self.eat(&TokenKind::Colon) {
                let (name, line, column) = self.ident("relationship type")?;
                match name.parse::<RelationType>() {
                    Ok(t) => Some(t),
                    Err(_) => {
                        return Err(ParseError {
                            line,
                            column,
                            message: format!("unknown relationship type {}", name),
                            expected: RelationType::ALL
                                .iter()
                                .map(|t| t.as_str().to_string())
                                .collect(),
                        })
                    }
                }
            } else {
                None
            };
            self.expect(&TokenKind::RBracket, "]")?;
            (variable, rel_type)
        } else {
            (None, None)
        };
        self.expect(&TokenKind::Minus, "-")?;
        let right_arrow = self.eat(&TokenKind::Gt);
        let direction = match (left_arrow, right_arrow) {
            (true, true) => {
                return Err(self.error_here(
                    "relationship pattern cannot point both ways",
                    &["->", "-"],
                ))
            }
            (true, false) => PatternDirection::RightToLeft,
            (false, true) => PatternDirection::LeftToRight,
            (false, false) => PatternDirection::Undirected,
        };
        Ok(RelPattern {
            variable,
            rel_type,
            direction,
        })
    }

    fn return_item(&mut self) -> Result<ReturnItem, ParseError> {
        let expr = self.value_expr()?;
        let alias = if self.eat_keyword(Keyword::As) {
            let (name, _, _) = self.ident("alias")?;
            Some(name)
        } else {
            None
        };
        Ok(ReturnItem { expr, alias })
    }

    pub(super) fn value_expr(&mut self) -> Result<ValueExpr, ParseError> {
        match self.peek() {
            Some(TokenKind::Ident(_)) => {
                if self.peek2() == Some(&TokenKind::Dot) {
                    let (variable, _, _) = self.ident("variable")?;
                    self.bump(); // dot
                    let (property, _, _) = self.ident("property name")?;
                    Ok(ValueExpr::Property { variable, property })
                } else {
                    let (variable, _, _) = self.ident("variable")?;
                    Ok(ValueExpr::Variable(variable))
                }
            }
            _ => Ok(ValueExpr::Literal(self.literal()?)),
        }
    }

    pub(super) fn literal(&mut self) -> Result<Literal, ParseError> {
        let negative = self.eat(&TokenKind::Minus);
        match self.peek().cloned() {
            Some(TokenKind::Integer(n)) => {
                self.bump();
                Ok(Literal::Int(if negative { -n } else { n }))
            }
            Some(TokenKind::Float(f)) => {
                self.bump();
                Ok(Literal::Float(if negative { -f } else { f }))
            }
            Some(_) if negative => {
                Err(self.error_here("expected a number after '-'", &["number"]))
            }
            Some(TokenKind::Text(s)) => {
                self.bump();
                Ok(Literal::Text(s))
            }
            Some(TokenKind::Keyword(Keyword::True)) => {
                self.bump();
                Ok(Literal::Bool(true))
            }
            Some(TokenKind::Keyword(Keyword::False)) => {
                self.bump();
                Ok(Literal::Bool(false))
            }
            Some(TokenKind::Keyword(Keyword::Null)) => {
                self.bump();
                Ok(Literal::Null)
            }
            _ => Err(self.error_here(self.found(), &["literal"])),
        }
    }

    fn bool_expr(&mut self) -> Result<BoolExpr, ParseError> {
        self.or_expr()
    }

    fn or_expr(&mut self) -> Result<BoolExpr, ParseError> {
        let mut expr = self.and_expr()?;
        while self.eat_keyword(Keyword::Or) {
            let rhs = self.and_expr()?;
            expr = BoolExpr::Or(Box::new(expr), Box::new(rhs));
        }
        Ok(expr)
    }

    fn and_expr(&mut self) -> Result<BoolExpr, ParseError> {
        let mut expr = self.not_expr()?;
        while self.eat_keyword(Keyword::And) {
            let rhs = self.not_expr()?;
            expr = BoolExpr::And(Box::new(expr), Box::new(rhs));
        }
        Ok(expr)
    }

    fn not_expr(&mut self) -> Result<BoolExpr, ParseError> {
        if self.eat_keyword(Keyword::Not) {
            let inner = self.not_expr()?;
            return Ok(BoolExpr::Not(Box::new(inner)));
        }
        self.predicate()
    }

    fn predicate(&mut self) -> Result<BoolExpr, ParseError> {
        if self.eat(&TokenKind::LParen) {
            let inner = self.or_expr()?;
            self.expect(&TokenKind::RParen, ")")?;
            return Ok(inner);
        }
        let lhs = self.value_expr()?;
        let op = match self.peek() {
            Some(TokenKind::Eq) => CompareOp::Eq,
            Some(TokenKind::NotEq) => CompareOp::NotEq,
            Some(TokenKind::Lt) => CompareOp::Lt,
            Some(TokenKind::LtEq) => CompareOp::LtEq,
            Some(TokenKind::Gt) => CompareOp::Gt,
            Some(TokenKind::GtEq) => CompareOp::GtEq,
            _ => {
                return Err(self.error_here(
                    self.found(),
                    &["=", "<>", "<", "<=", ">", ">="],
                ))
            }
        };
        self.bump();
        let rhs = self.value_expr()?;
        Ok(BoolExpr::Compare { op, lhs, rhs })
    }
}

fn check_semantics(ast: &QueryAst) -> Result<(), ParseError> {
    let mut kinds: HashMap<String, VarKind> = HashMap::new();

    fn bind(
        kinds: &mut HashMap<String, VarKind>,
        name: &str,
        kind: VarKind,
    ) -> Result<(), ParseError> {
        match kinds.get(name) {
            Some(existing) if *existing != kind => Err(semantic_error(format!(
                "variable {} is used as both a node and a relationship",
                name
            ))),
            _ => {
                kinds.insert(name.to_string(), kind);
                Ok(())
            }
        }
    }

    for clause in &ast.matches {
        let mut clause_rel_vars: HashSet<&str> = HashSet::new();
        for node in clause.path.node_patterns() {
            if let Some(v) = &node.variable {
                bind(&mut kinds, v, VarKind::Node)?;
            }
        }
        for rel in clause.path.rel_patterns() {
            if let Some(v) = &rel.variable {
                if !clause_rel_vars.insert(v) {
                    return Err(semantic_error(format!(
                        "relationship variable {} appears twice in one MATCH pattern",
                        v
                    )));
                }
                bind(&mut kinds, v, VarKind::Rel)?;
            }
        }
    }

    let bound: HashSet<&str> = kinds.keys().map(String::as_str).collect();
    let check_expr = |expr: &ValueExpr, place: &str| -> Result<(), ParseError> {
        let variable = match expr {
            ValueExpr::Variable(v) => Some(v),
            ValueExpr::Property { variable, .. } => Some(variable),
            ValueExpr::Literal(_) => None,
        };
        match variable {
            Some(v) if !bound.contains(v.as_str()) => Err(semantic_error(format!(
                "variable {} in {} is not bound by any MATCH pattern",
                v, place
            ))),
            _ => Ok(()),
        }
    };

    if let Some(where_expr) = &ast.where_expr {
        let mut stack = vec![where_expr];
        while let Some(expr) = stack.pop() {
            match expr {
                BoolExpr::Compare { lhs, rhs, .. } => {
                    check_expr(lhs, "WHERE")?;
                    check_expr(rhs, "WHERE")?;
                }
                BoolExpr::And(l, r) | BoolExpr::Or(l, r) => {
                    stack.push(l);
                    stack.push(r);
                }
                BoolExpr::Not(inner) => stack.push(inner),
            }
        }
    }
    for item in &ast.return_items {
        check_expr(&item.expr, "RETURN")?;
    }
    for key in &ast.order_keys {
        check_expr(&key.expr, "ORDER BY")?;
    }

    let mut aliases = HashSet::new();
    for item in &ast.return_items {
        if let Some(alias) = &item.alias {
            if !aliases.insert(alias.as_str()) {
                return Err(semantic_error(format!("duplicate alias {}", alias)));
            }
        }
    }
    Ok(())
}

fn semantic_error(message: String) -> ParseError {
    ParseError {
        line: 1,
        column: 1,
        message,
        expected: Vec::new(),
    }
}
