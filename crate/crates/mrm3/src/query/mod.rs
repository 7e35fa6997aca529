//! Lexer, parser and executor for the query subset.
//!
//! The grammar (published as EBNF in docs/query-grammar.md) covers
//! multiple MATCH clauses, one optional WHERE applied after all matches,
//! RETURN with aliases, multi-key ORDER BY and LIMIT. Results use bag
//! semantics. Parsing is pure; execution takes a read view of the graph,
//! so any number of executions may run concurrently.

pub mod ast;
mod exec;
mod parser;
mod plan;
mod script;
mod token;

pub use ast::{pretty, QueryAst};
pub use exec::{execute, Binding, Entity, ResultTable};
pub use parser::parse;
pub use plan::explain;
pub use script::{parse_merge_script, MergeScript, ScriptStatement, ScriptValue, SetItem};
pub use token::{tokenize, Keyword, Token, TokenKind};

/// Parse failure with a 1-based source position. `expected` lists the
/// token descriptions that would have been accepted, when known.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: u32,
    pub column: u32,
    pub message: String,
    pub expected: Vec<String>,
}
