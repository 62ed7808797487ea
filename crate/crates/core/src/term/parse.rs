use std::fmt;

use thiserror::Error;

use super::{Signature, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermParseErrorKind {
    Empty,
    UnknownSymbol(String),
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    /// A variable followed by an argument list.
    AppliedVariable(String),
    /// A symbol between two operands that is not declared infix.
    NotInfix(String),
    UnbalancedParentheses,
    Whitespace,
    UnexpectedChar(char),
    UnexpectedEnd,
}

impl fmt::Display for TermParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermParseErrorKind::Empty => f.write_str("empty term"),
            TermParseErrorKind::UnknownSymbol(s) => write!(f, "unknown symbol `{s}`"),
            TermParseErrorKind::ArityMismatch {
                symbol,
                expected,
                found,
            } => write!(f, "arity mismatch: `{symbol}` expects {expected} arguments, found {found}"),
            TermParseErrorKind::AppliedVariable(s) => write!(f, "variable `{s}` cannot take arguments"),
            TermParseErrorKind::NotInfix(s) => write!(f, "`{s}` is not an infix symbol"),
            TermParseErrorKind::UnbalancedParentheses => f.write_str("unbalanced parentheses"),
            TermParseErrorKind::Whitespace => f.write_str("whitespace inside a term"),
            TermParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            TermParseErrorKind::UnexpectedEnd => f.write_str("unexpected end of term"),
        }
    }
}

/// `offset` counts characters from the start of the term text.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} at offset {offset}")]
pub struct TermParseError {
    pub offset: usize,
    pub kind: TermParseErrorKind,
}

/// Parses a term in file syntax.
///
/// ```text
/// expr    := operand (INFIX operand)?
/// operand := '(' expr ')' | NAME ('(' expr (',' expr)* ')')?
/// ```
///
/// `NAME` is an ASCII alphanumeric run or one of `|-`, `⊢`, `ε`. The infix
/// form requires parentheses around alphanumeric operands, e.g.
/// `(A)impl(B)`; `cons(A,eps)|-cons(A,eps)` needs none.
pub fn parse_term(text: &str, sig: &Signature) -> Result<Term, TermParseError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        sig,
    };
    if p.chars.is_empty() {
        return p.fail(TermParseErrorKind::Empty);
    }
    let t = p.expr()?;
    match p.peek() {
        None => Ok(t),
        Some(')') => p.fail(TermParseErrorKind::UnbalancedParentheses),
        Some(c) if c.is_whitespace() => p.fail(TermParseErrorKind::Whitespace),
        Some(c) => p.fail(TermParseErrorKind::UnexpectedChar(c)),
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    sig: &'a Signature,
}

fn is_name_start(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '|' || c == '⊢' || c == 'ε'
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn fail<T>(&self, kind: TermParseErrorKind) -> Result<T, TermParseError> {
        self.fail_at(self.pos, kind)
    }

    fn fail_at<T>(&self, offset: usize, kind: TermParseErrorKind) -> Result<T, TermParseError> {
        Err(TermParseError { offset, kind })
    }

    fn unexpected<T>(&self) -> Result<T, TermParseError> {
        match self.peek() {
            None => self.fail(TermParseErrorKind::UnexpectedEnd),
            Some(c) if c.is_whitespace() => self.fail(TermParseErrorKind::Whitespace),
            Some(c) => self.fail(TermParseErrorKind::UnexpectedChar(c)),
        }
    }

    fn name(&mut self) -> Result<String, TermParseError> {
        let start = self.pos;
        match self.peek() {
            Some('⊢') | Some('ε') => {
                self.pos += 1;
            }
            Some('|') => {
                if self.chars.get(self.pos + 1) != Some(&'-') {
                    return self.fail(TermParseErrorKind::UnexpectedChar('|'));
                }
                self.pos += 2;
            }
            Some(c) if c.is_ascii_alphanumeric() => {
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
                    self.pos += 1;
                }
            }
            _ => return self.unexpected(),
        }
        let raw: String = self.chars[start..self.pos].iter().collect();
        Ok(Signature::canonical_name(&raw).to_string())
    }

    fn expr(&mut self) -> Result<Term, TermParseError> {
        let lhs = self.operand()?;
        match self.peek() {
            Some(c) if is_name_start(c) => {
                let start = self.pos;
                let op = self.name()?;
                if !self.sig.is_infix(&op) {
                    return self.fail_at(start, TermParseErrorKind::NotInfix(op));
                }
                let rhs = self.operand()?;
                Ok(Term::App(op, vec![lhs, rhs]))
            }
            _ => Ok(lhs),
        }
    }

    fn operand(&mut self) -> Result<Term, TermParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() == Some(')') {
                    self.pos += 1;
                    Ok(inner)
                } else if self.peek().is_none() {
                    self.fail(TermParseErrorKind::UnbalancedParentheses)
                } else {
                    self.unexpected()
                }
            }
            Some(c) if is_name_start(c) => self.application(),
            _ => self.unexpected(),
        }
    }

    fn application(&mut self) -> Result<Term, TermParseError> {
        let start = self.pos;
        let name = self.name()?;
        let mut args = Vec::new();
        let has_args = self.peek() == Some('(');
        if has_args {
            if self.sig.is_variable(&name) {
                return self.fail_at(start, TermParseErrorKind::AppliedVariable(name));
            }
            self.pos += 1;
            loop {
                args.push(self.expr()?);
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some(')') => {
                        self.pos += 1;
                        break;
                    }
                    None => return self.fail(TermParseErrorKind::UnbalancedParentheses),
                    _ => return self.unexpected(),
                }
            }
        }
        if !has_args && self.sig.is_variable(&name) {
            return Ok(Term::Var(name));
        }
        match self.sig.function(&name) {
            None => self.fail_at(start, TermParseErrorKind::UnknownSymbol(name)),
            Some(decl) if decl.arity != args.len() => self.fail_at(
                start,
                TermParseErrorKind::ArityMismatch {
                    symbol: name,
                    expected: decl.arity,
                    found: args.len(),
                },
            ),
            Some(_) => Ok(Term::App(name, args)),
        }
    }
}
