//! Textual conditions, e.g. `A >= 4 & A <= 6 | B >= 4 & B <= 6`.
//!
//! ```text
//! expr     := conj ( ("|" | "||") conj )*
//! conj     := unary ( ("&" | "&&") unary )*
//! unary    := "!" unary | "(" expr ")" | operand cmp operand
//! cmp      := ">" | ">=" | "<" | "<=" | "==" | "="
//! operand  := ROW | ROW "[" INT "]" | "low" "(" ROW "," INT ")" | INT
//! ROW      := "A" (multiplicand) | "B" (multiplier) | "P" (product)
//! ```
//!
//! `ROW[i]` is the `i`-th digit counted from the most significant end,
//! `low(ROW, k)` the number formed by its `k` trailing digits. Integer
//! literals are decimal.

use super::{CmpOp, ConditionError, ConditionExpr, Operand};
use crate::tableau::RowRef;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Row(RowRef),
    Int(u64),
    Low,
    Cmp(CmpOp),
    And,
    Or,
    Not,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

fn syntax(position: usize, message: impl Into<String>) -> ConditionError {
    ConditionError::Syntax {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ConditionError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let two = |next: u8| bytes.get(i + 1) == Some(&next);
        let token = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            'A' => Token::Row(RowRef::Multiplicand),
            'B' => Token::Row(RowRef::Multiplier),
            'P' => Token::Row(RowRef::Product),
            '(' => Token::LParen,
            ')' => Token::RParen,
            '[' => Token::LBracket,
            ']' => Token::RBracket,
            ',' => Token::Comma,
            '&' => {
                if two(b'&') {
                    i += 1;
                }
                Token::And
            }
            '|' => {
                if two(b'|') {
                    i += 1;
                }
                Token::Or
            }
            '!' if !two(b'=') => Token::Not,
            '>' | '<' => {
                let eq = two(b'=');
                if eq {
                    i += 1;
                }
                Token::Cmp(match (c, eq) {
                    ('>', false) => CmpOp::Gt,
                    ('>', true) => CmpOp::Ge,
                    ('<', false) => CmpOp::Lt,
                    _ => CmpOp::Le,
                })
            }
            '=' => {
                if two(b'=') {
                    i += 1;
                }
                Token::Cmp(CmpOp::Eq)
            }
            '0'..='9' => {
                let mut end = i;
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
                let value = text[i..end].parse().map_err(|_| {
                    syntax(start, format!("integer {:?} is too large", &text[i..end]))
                })?;
                i = end;
                out.push((start, Token::Int(value)));
                continue;
            }
            'l' if text[i..].starts_with("low") => {
                i += 3;
                out.push((start, Token::Low));
                continue;
            }
            other => return Err(syntax(start, format!("unexpected character {other:?}"))),
        };
        i += 1;
        out.push((start, token));
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<(), ConditionError> {
        let at = self.offset();
        match self.next() {
            Some(t) if t == want => Ok(()),
            _ => Err(syntax(at, format!("expected {what}"))),
        }
    }

    fn expr(&mut self) -> Result<ConditionExpr, ConditionError> {
        let mut terms = vec![self.conj()?];
        while self.peek() == Some(&Token::Or) {
            self.next();
            terms.push(self.conj()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            ConditionExpr::Or(terms)
        })
    }

    fn conj(&mut self) -> Result<ConditionExpr, ConditionError> {
        let mut terms = vec![self.unary()?];
        while self.peek() == Some(&Token::And) {
            self.next();
            terms.push(self.unary()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            ConditionExpr::And(terms)
        })
    }

    fn unary(&mut self) -> Result<ConditionExpr, ConditionError> {
        match self.peek() {
            Some(Token::Not) => {
                self.next();
                Ok(ConditionExpr::Not(Box::new(self.unary()?)))
            }
            Some(Token::LParen) => {
                self.next();
                let inner = self.expr()?;
                self.expect(Token::RParen, "')'")?;
                Ok(inner)
            }
            _ => {
                let x = self.operand()?;
                let at = self.offset();
                let op = match self.next() {
                    Some(Token::Cmp(op)) => op,
                    _ => return Err(syntax(at, "expected a comparison operator")),
                };
                let y = self.operand()?;
                Ok(ConditionExpr::Compare(op, x, y))
            }
        }
    }

    fn int(&mut self) -> Result<u64, ConditionError> {
        let at = self.offset();
        match self.next() {
            Some(Token::Int(v)) => Ok(v),
            _ => Err(syntax(at, "expected an integer")),
        }
    }

    fn row(&mut self) -> Result<RowRef, ConditionError> {
        let at = self.offset();
        match self.next() {
            Some(Token::Row(r)) => Ok(r),
            _ => Err(syntax(at, "expected A, B or P")),
        }
    }

    fn operand(&mut self) -> Result<Operand, ConditionError> {
        let at = self.offset();
        match self.peek() {
            Some(Token::Int(_)) => Ok(Operand::constant(self.int()?)),
            Some(Token::Row(_)) => {
                let row = self.row()?;
                if self.peek() == Some(&Token::LBracket) {
                    self.next();
                    let index = self.int()? as usize;
                    self.expect(Token::RBracket, "']'")?;
                    Ok(Operand::Digit { row, index })
                } else {
                    Ok(Operand::Row(row))
                }
            }
            Some(Token::Low) => {
                self.next();
                self.expect(Token::LParen, "'('")?;
                let row = self.row()?;
                self.expect(Token::Comma, "','")?;
                let digits = self.int()? as usize;
                self.expect(Token::RParen, "')'")?;
                Ok(Operand::Trailing { row, digits })
            }
            _ => Err(syntax(at, "expected an operand")),
        }
    }
}

/// Parses one condition in the grammar above.
pub fn parse_condition(text: &str) -> Result<ConditionExpr, ConditionError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(syntax(0, "empty condition"));
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        end: text.len(),
    };
    let expr = p.expr()?;
    if p.pos < p.tokens.len() {
        return Err(syntax(p.offset(), "unexpected trailing input"));
    }
    Ok(expr)
}
