//! Tokenizer. Keywords are case-insensitive; identifiers, labels and
//! relationship types are case-sensitive. Positions are 1-based
//! line:column of the token start. `//` starts a comment running to the
//! end of the line.

use std::fmt;

use super::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keyword {
    Match,
    Where,
    Return,
    Order,
    By,
    Asc,
    Desc,
    Limit,
    As,
    And,
    Or,
    Not,
    True,
    False,
    Null,
    Merge,
    Set,
}

impl Keyword {
    fn from_ident(text: &str) -> Option<Keyword> {
        Some(match text.to_ascii_uppercase().as_str() {
            "MATCH" => Keyword::Match,
            "WHERE" => Keyword::Where,
            "RETURN" => Keyword::Return,
            "ORDER" => Keyword::Order,
            "BY" => Keyword::By,
            "ASC" => Keyword::Asc,
            "DESC" => Keyword::Desc,
            "LIMIT" => Keyword::Limit,
            "AS" => Keyword::As,
            "AND" => Keyword::And,
            "OR" => Keyword::Or,
            "NOT" => Keyword::Not,
            "TRUE" => Keyword::True,
            "FALSE" => Keyword::False,
            "NULL" => Keyword::Null,
            "MERGE" => Keyword::Merge,
            "SET" => Keyword::Set,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Keyword::Match => "MATCH",
            Keyword::Where => "WHERE",
            Keyword::Return => "RETURN",
            Keyword::Order => "ORDER",
            Keyword::By => "BY",
            Keyword::Asc => "ASC",
            Keyword::Desc => "DESC",
            Keyword::Limit => "LIMIT",
            Keyword::As => "AS",
            Keyword::And => "AND",
            Keyword::Or => "OR",
            Keyword::Not => "NOT",
            Keyword::True => "TRUE",
            Keyword::False => "FALSE",
            Keyword::Null => "NULL",
            Keyword::Merge => "MERGE",
            Keyword::Set => "SET",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    Keyword(Keyword),
    Ident(String),
    Integer(i64),
    Float(f64),
    Text(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Colon,
    Comma,
    Dot,
    Semicolon,
    Minus,
    Lt,
    Gt,
    Eq,
    NotEq,
    LtEq,
    GtEq,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Keyword(k) => write!(f, "{}", k.as_str()),
            TokenKind::Ident(s) => write!(f, "identifier {}", s),
            TokenKind::Integer(n) => write!(f, "{}", n),
            TokenKind::Float(x) => write!(f, "{}", x),
            TokenKind::Text(s) => write!(f, "{:?}", s),
            TokenKind::LParen => f.write_str("("),
            TokenKind::RParen => f.write_str(")"),
            TokenKind::LBracket => f.write_str("["),
            TokenKind::RBracket => f.write_str("]"),
            TokenKind::LBrace => f.write_str("{"),
            TokenKind::RBrace => f.write_str("}"),
            TokenKind::Colon => f.write_str(":"),
            TokenKind::Comma => f.write_str(","),
            TokenKind::Dot => f.write_str("."),
            TokenKind::Semicolon => f.write_str(";"),
            TokenKind::Minus => f.write_str("-"),
            TokenKind::Lt => f.write_str("<"),
            TokenKind::Gt => f.write_str(">"),
            TokenKind::Eq => f.write_str("="),
            TokenKind::NotEq => f.write_str("<>"),
            TokenKind::LtEq => f.write_str("<="),
            TokenKind::GtEq => f.write_str(">="),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: u32,
    pub column: u32,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    column: u32,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Lexer<'a> {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn error(&self, line: u32, column: u32, message: impl Into<String>) -> ParseError {
        ParseError {
            line,
            column,
            message: message.into(),
            expected: Vec::new(),
        }
    }
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut lexer = Lexer::new(text);
    let mut tokens = Vec::new();

    while let Some(c) = lexer.peek() {
        let line = lexer.line;
        let column = lexer.column;

        if c.is_whitespace() {
            lexer.bump();
            continue;
        }

        if c == '/' {
            lexer.bump();
            if lexer.peek() == Some('/') {
                while let Some(c) = lexer.peek() {
                    if c == '\n' {
                        break;
                    }
                    lexer.bump();
                }
                continue;
            }
            return Err(lexer.error(line, column, "unexpected character '/'"));
        }

        if c.is_ascii_digit() {
            let mut number = String::new();
            let mut is_float = false;
            while let Some(d) = lexer.peek() {
                if d.is_ascii_digit() {
                    number.push(d);
                    lexer.bump();
                } else if d == '.' {
                    // a digit must follow; "1." alone is not a literal
                    let mut probe = lexer.chars.clone();
                    probe.next();
                    match probe.peek() {
                        Some(n) if n.is_ascii_digit() => {
                            is_float = true;
                            number.push('.');
                            lexer.bump();
                        }
                        _ => break,
                    }
                } else if d == 'e' || d == 'E' {
                    let mut probe = lexer.chars.clone();
                    probe.next();
                    let next = probe.peek().copied();
                    let exponent_follows = match next {
                        Some(s) if s.is_ascii_digit() => true,
                        Some('+') | Some('-') => {
                            probe.next();
                            probe.peek().is_some_and(|n| n.is_ascii_digit())
                        }
                        _ => false,
                    };
                    if !exponent_follows {
                        break;
                    }
                    is_float = true;
                    number.push(d);
                    lexer.bump();
                    if let Some(sign @ ('+' | '-')) = lexer.peek() {
                        number.push(sign);
                        lexer.bump();
                    }
                } else {
                    break;
                }
            }
            let kind = if is_float {
                TokenKind::Float(number.parse().map_err(|_| {
                    lexer.error(line, column, format!("bad number literal {}", number))
                })?)
            } else {
                match number.parse::<i64>() {
                    Ok(n) => TokenKind::Integer(n),
                    // out of i64 range: fall back to float
                    Err(_) => TokenKind::Float(number.parse().map_err(|_| {
                        lexer.error(line, column, format!("bad number literal {}", number))
                    })?),
                }
            };
            tokens.push(Token { kind, line, column });
            continue;
        }

        if c.is_alphabetic() || c == '_' {
            let mut ident = String::new();
            while let Some(d) = lexer.peek() {
                if d.is_alphanumeric() || d == '_' {
                    ident.push(d);
                    lexer.bump();
                } else {
                    break;
                }
            }
            let kind = match Keyword::from_ident(&ident) {
                Some(keyword) => TokenKind::Keyword(keyword),
                None => TokenKind::Ident(ident),
            };
            tokens.push(Token { kind, line, column });
            continue;
        }

        if c == '\'' || c == '"' {
            let quote = c;
            lexer.bump();
            let mut value = String::new();
            loop {
                match lexer.bump() {
                    None => {
                        return Err(lexer.error(line, column, "unterminated string literal"))
                    }
                    Some(d) if d == quote => break,
                    Some('\\') => match lexer.bump() {
                        Some('n') => value.push('\n'),
                        Some('t') => value.push('\t'),
                        Some('r') => value.push('\r'),
                        Some('\\') => value.push('\\'),
                        Some('\'') => value.push('\''),
                        Some('"') => value.push('"'),
                        Some(other) => {
                            return Err(lexer.error(
                                lexer.line,
                                lexer.column.saturating_sub(1),
                                format!("unknown escape sequence \\{}", other),
                            ))
                        }
                        None => {
                            return Err(lexer.error(line, column, "unterminated string literal"))
                        }
                    },
                    Some(d) => value.push(d),
                }
            }
            tokens.push(Token {
                kind: TokenKind::Text(value),
                line,
                column,
            });
            continue;
        }

        let kind = match c {
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            '[' => TokenKind::LBracket,
            ']' => TokenKind::RBracket,
            '{' => TokenKind::LBrace,
            '}' => TokenKind::RBrace,
            ':' => TokenKind::Colon,
            ',' => TokenKind::Comma,
            '.' => TokenKind::Dot,
            ';' => TokenKind::Semicolon,
            '-' => TokenKind::Minus,
            '=' => TokenKind::Eq,
            '<' => {
                lexer.bump();
                match lexer.peek() {
                    Some('=') => {
                        lexer.bump();
                        tokens.push(Token {
                            kind: TokenKind::LtEq,
                            line,
                            column,
                        });
                        continue;
                    }
                    Some('>') => {
                        lexer.bump();
                        tokens.push(Token {
                            kind: TokenKind::NotEq,
                            line,
                            column,
                        });
                        continue;
                    }
                    _ => {
                        tokens.push(Token {
                            kind: TokenKind::Lt,
                            line,
                            column,
                        });
                        continue;
                    }
                }
            }
            '>' => {
                lexer.bump();
                if lexer.peek() == Some('=') {
                    lexer.bump();
                    tokens.push(Token {
                        kind: TokenKind::GtEq,
                        line,
                        column,
                    });
                } else {
                    tokens.push(Token {
                        kind: TokenKind::Gt,
                        line,
                        column,
                    });
                }
                continue;
            }
            other => {
                return Err(lexer.error(line, column, format!("unexpected character {:?}", other)))
            }
        };
        lexer.bump();
        tokens.push(Token { kind, line, column });
    }

    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<TokenKind> {
        tokenize(text).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn return_property_access() {
        assert_eq!(
            kinds("RETURN m.name"),
            vec![
                TokenKind::Keyword(Keyword::Return),
                TokenKind::Ident("m".into()),
                TokenKind::Dot,
                TokenKind::Ident("name".into()),
            ]
        );
    }

    #[test]
    fn keywords_are_case_insensitive() {
        assert_eq!(kinds("match")[0], TokenKind::Keyword(Keyword::Match));
        assert_eq!(kinds("MaTcH")[0], TokenKind::Keyword(Keyword::Match));
        // identifiers keep their case
        assert_eq!(kinds("Model")[0], TokenKind::Ident("Model".into()));
    }

    #[test]
    fn relationship_type_in_brackets() {
        assert_eq!(
            kinds("[:TRAINED_ON]"),
            vec![
                TokenKind::LBracket,
                TokenKind::Colon,
                TokenKind::Ident("TRAINED_ON".into()),
                TokenKind::RBracket,
            ]
        );
    }

    #[test]
    fn arrows_stay_single_characters() {
        assert_eq!(
            kinds("]->("),
            vec![
                TokenKind::RBracket,
                TokenKind::Minus,
                TokenKind::Gt,
                TokenKind::LParen,
            ]
        );
        // comparison followed by negative literal
        assert_eq!(
            kinds("x < -1"),
            vec![
                TokenKind::Ident("x".into()),
                TokenKind::Lt,
                TokenKind::Minus,
                TokenKind::Integer(1),
            ]
        );
    }

    #[test]
    fn two_character_operators() {
        assert_eq!(kinds("<= >= <>"), vec![TokenKind::LtEq, TokenKind::GtEq, TokenKind::NotEq]);
    }

    #[test]
    fn numbers_and_strings() {
        assert_eq!(
            kinds("0.072 42 1e3 'it''ok' \"d\\\"q\""),
            vec![
                TokenKind::Float(0.072),
                TokenKind::Integer(42),
                TokenKind::Float(1000.0),
                TokenKind::Text("it".into()),
                TokenKind::Text("ok".into()),
                TokenKind::Text("d\"q".into()),
            ]
        );
    }

    #[test]
    fn positions_are_one_based() {
        let tokens = tokenize("MATCH\n  (n)").unwrap();
        assert_eq!((tokens[0].line, tokens[0].column), (1, 1));
        assert_eq!((tokens[1].line, tokens[1].column), (2, 3));
    }

    #[test]
    fn illegal_character_reports_position() {
        let err = tokenize("RETURN ^").unwrap_err();
        assert_eq!((err.line, err.column), (1, 8));
    }

    #[test]
    fn comments_are_skipped() {
        assert_eq!(
            kinds("// header\nRETURN 1"),
            vec![TokenKind::Keyword(Keyword::Return), TokenKind::Integer(1)]
        );
    }
}
