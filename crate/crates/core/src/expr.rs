//! Shared infix syntax for rational functions, polynomials and jet expressions.
//!
//! The grammar is the usual one: integers, identifiers, `+ - * / ^`, and
//! parentheses. Jet variables are lexed as single tokens: `X[i,j]`,
//! `X'[i,j]` and `X^(k)[i,j]`. What identifiers and divisions mean is left to
//! an [`Evaluator`].

use num_bigint::BigInt;
use std::fmt;

/// A syntax or resolution error anchored at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: Pos, message: impl Into<String>) -> Self {
        ParseError {
            line: pos.line,
            column: pos.column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    Ident(String, Pos),
    /// `∂^order X[row, col]`, indices 1-based as written.
    Jet {
        order: u32,
        row: usize,
        col: usize,
        pos: Pos,
    },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, Pos),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Jet { order: u32, row: usize, col: usize },
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer {
    chars: Vec<char>,
    at: usize,
    origin: Pos,
}

impl Lexer {
    fn pos_of(&self, idx: usize) -> Pos {
        Pos {
            line: self.origin.line,
            column: self.origin.column + idx,
        }
    }

    fn peek_at(&self, idx: usize) -> Option<char> {
        self.chars.get(idx).copied()
    }

    fn tokens(mut self) -> Result<Vec<(Tok, Pos)>, ParseError> {
        let mut out = Vec::new();
        while self.at < self.chars.len() {
            let c = self.chars[self.at];
            let start = self.at;
            if c.is_whitespace() {
                self.at += 1;
                continue;
            }
            let tok = match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                d if d.is_ascii_digit() => {
                    let mut end = start;
                    while end < self.chars.len() && self.chars[end].is_ascii_digit() {
                        end += 1;
                    }
                    let text: String = self.chars[start..end].iter().collect();
                    self.at = end;
                    out.push((Tok::Num(text.parse().unwrap()), self.pos_of(start)));
                    continue;
                }
                a if a.is_alphabetic() || a == '_' => {
                    let mut end = start;
                    while end < self.chars.len()
                        && (self.chars[end].is_alphanumeric() || self.chars[end] == '_')
                    {
                        end += 1;
                    }
                    let name: String = self.chars[start..end].iter().collect();
                    self.at = end;
                    if name == "X" {
                        if let Some(tok) = self.try_jet(start)? {
                            out.push((tok, self.pos_of(start)));
                            continue;
                        }
                    }
                    out.push((Tok::Ident(name), self.pos_of(start)));
                    continue;
                }
                other => {
                    return Err(ParseError::new(
                        self.pos_of(start),
                        format!("unexpected character '{other}'"),
                    ))
                }
            };
            self.at += 1;
            out.push((tok, self.pos_of(start)));
        }
        Ok(out)
    }

    /// Called right after an `X`; consumes a jet suffix if one follows.
    fn try_jet(&mut self, start: usize) -> Result<Option<Tok>, ParseError> {
        let mut idx = self.at;
        let mut order = 0u32;
        match self.peek_at(idx) {
            Some('[') => {}
            Some('\'') => {
                while self.peek_at(idx) == Some('\'') {
                    order += 1;
                    idx += 1;
                }
                if self.peek_at(idx) != Some('[') {
                    return Err(ParseError::new(
                        self.pos_of(idx),
                        "expected '[' after jet prime",
                    ));
                }
            }
            Some('^') if self.peek_at(idx + 1) == Some('(') => {
                let mut j = idx + 2;
                let digits_start = j;
                while self.peek_at(j).is_some_and(|c| c.is_ascii_digit()) {
                    j += 1;
                }
                if j == digits_start
                    || self.peek_at(j) != Some(')')
                    || self.peek_at(j + 1) != Some('[')
                {
                    return Ok(None);
                }
                let digits: String = self.chars[digits_start..j].iter().collect();
                order = digits
                    .parse()
                    .map_err(|_| ParseError::new(self.pos_of(digits_start), "jet order too large"))?;
                idx = j + 1;
            }
            _ => return Ok(None),
        }
        // idx points at '['
        let mut j = idx + 1;
        let row = self.read_index(&mut j)?;
        self.skip_ws(&mut j);
        if self.peek_at(j) != Some(',') {
            return Err(ParseError::new(self.pos_of(j), "expected ',' in jet index"));
        }
        j += 1;
        let col = self.read_index(&mut j)?;
        self.skip_ws(&mut j);
        if self.peek_at(j) != Some(']') {
            return Err(ParseError::new(self.pos_of(j), "expected ']' in jet index"));
        }
        self.at = j + 1;
        if row == 0 || col == 0 {
            return Err(ParseError::new(
                self.pos_of(start),
                "jet indices are 1-based",
            ));
        }
        Ok(Some(Tok::Jet { order, row, col }))
    }

    fn skip_ws(&self, j: &mut usize) {
        while self.peek_at(*j).is_some_and(char::is_whitespace) {
            *j += 1;
        }
    }

    fn read_index(&self, j: &mut usize) -> Result<usize, ParseError> {
        self.skip_ws(j);
        let s = *j;
        while self.peek_at(*j).is_some_and(|c| c.is_ascii_digit()) {
            *j += 1;
        }
        if s == *j {
            return Err(ParseError::new(self.pos_of(s), "expected jet index"));
        }
        let text: String = self.chars[s..*j].iter().collect();
        text.parse()
            .map_err(|_| ParseError::new(self.pos_of(s), "jet index too large"))
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    fn next(&mut self) -> Option<(Tok, Pos)> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    let pos = self.pos();
                    self.at += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), pos);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.peek() == Some(&Tok::Plus) {
            self.at += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.at += 1;
            let pos = self.pos();
            let exp = match self.next() {
                Some((Tok::Num(n), _)) => n,
                Some((Tok::LParen, _)) => {
                    let n = match self.next() {
                        Some((Tok::Num(n), _)) => n,
                        _ => return Err(ParseError::new(pos, "expected integer exponent")),
                    };
                    if !matches!(self.next(), Some((Tok::RParen, _))) {
                        return Err(ParseError::new(pos, "expected ')' after exponent"));
                    }
                    n
                }
                _ => return Err(ParseError::new(pos, "expected non-negative integer exponent")),
            };
            let e: u32 = exp
                .try_into()
                .map_err(|_| ParseError::new(pos, "exponent out of range"))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.next() {
            Some((Tok::Num(n), _)) => Ok(Expr::Num(n)),
            Some((Tok::Ident(s), p)) => Ok(Expr::Ident(s, p)),
            Some((Tok::Jet { order, row, col }, p)) => Ok(Expr::Jet {
                order,
                row,
                col,
                pos: p,
            }),
            Some((Tok::LParen, _)) => {
                let e = self.expr()?;
                match self.next() {
                    Some((Tok::RParen, _)) => Ok(e),
                    _ => Err(ParseError::new(self.pos(), "expected ')'")),
                }
            }
            Some((t, p)) => Err(ParseError::new(p, format!("unexpected token {t:?}"))),
            None => Err(ParseError::new(pos, "unexpected end of input")),
        }
    }
}

/// Parses `text` as if it started at line 1, column 1.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    parse_expr_at(text, Pos { line: 1, column: 1 })
}

/// Parses `text`, reporting positions relative to `origin`.
pub fn parse_expr_at(text: &str, origin: Pos) -> Result<Expr, ParseError> {
    let lexer = Lexer {
        chars: text.chars().collect(),
        at: 0,
        origin,
    };
    let end = Pos {
        line: origin.line,
        column: origin.column + text.chars().count(),
    };
    let toks = lexer.tokens()?;
    if toks.is_empty() {
        return Err(ParseError::new(origin, "empty expression"));
    }
    let mut p = Parser { toks, at: 0, end };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return Err(ParseError::new(p.pos(), "trailing input"));
    }
    Ok(e)
}

/// Interprets an [`Expr`] in some algebraic target.
pub trait Evaluator {
    type Value;

    fn number(&self, n: &BigInt) -> Self::Value;
    fn ident(&self, name: &str, pos: Pos) -> Result<Self::Value, ParseError>;
    fn jet(&self, order: u32, row: usize, col: usize, pos: Pos) -> Result<Self::Value, ParseError> {
        let _ = (order, row, col);
        Err(ParseError::new(pos, "jet variables are not allowed here"))
    }
    fn add(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn sub(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn neg(&self, a: Self::Value) -> Self::Value;
    fn div(&self, a: Self::Value, b: Self::Value, pos: Pos) -> Result<Self::Value, ParseError>;
    fn pow(&self, a: Self::Value, e: u32) -> Self::Value;
}

pub fn eval<E: Evaluator>(ev: &E, expr: &Expr) -> Result<E::Value, ParseError> {
    Ok(match expr {
        Expr::Num(n) => ev.number(n),
        Expr::Ident(name, pos) => ev.ident(name, *pos)?,
        Expr::Jet {
            order,
            row,
            col,
            pos,
        } => ev.jet(*order, *row, *col, *pos)?,
        Expr::Neg(a) => ev.neg(eval(ev, a)?),
        Expr::Add(a, b) => ev.add(eval(ev, a)?, eval(ev, b)?),
        Expr::Sub(a, b) => ev.sub(eval(ev, a)?, eval(ev, b)?),
        Expr::Mul(a, b) => ev.mul(eval(ev, a)?, eval(ev, b)?),
        Expr::Div(a, b, pos) => ev.div(eval(ev, a)?, eval(ev, b)?, *pos)?,
        Expr::Pow(a, e) => ev.pow(eval(ev, a)?, *e),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse_expr("-x^2 + 1/2*y").unwrap();
        match e {
            Expr::Add(lhs, rhs) => {
                assert!(matches!(*lhs, Expr::Neg(_)));
                assert!(matches!(*rhs, Expr::Mul(_, _)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn jet_tokens() {
        let e = parse_expr("X^(3)[1,2]^2 - X'[2, 1]*X[1,1]").unwrap();
        let Expr::Sub(lhs, rhs) = e else { panic!() };
        assert!(matches!(*lhs, Expr::Pow(ref b, 2) if matches!(**b, Expr::Jet { order: 3, row: 1, col: 2, .. })));
        let Expr::Mul(a, b) = *rhs else { panic!() };
        assert!(matches!(*a, Expr::Jet { order: 1, row: 2, col: 1, .. }));
        assert!(matches!(*b, Expr::Jet { order: 0, row: 1, col: 1, .. }));
    }

    #[test]
    fn plain_x_power_is_not_a_jet() {
        let e = parse_expr("X^(2)").unwrap();
        assert!(matches!(e, Expr::Pow(ref b, 2) if matches!(**b, Expr::Ident(ref s, _) if s == "X")));
    }

    #[test]
    fn error_positions() {
        let err = parse_expr("x + $").unwrap_err();
        assert_eq!((err.line, err.column), (1, 5));
        let err = parse_expr_at("x +", Pos { line: 7, column: 3 }).unwrap_err();
        assert_eq!(err.line, 7);
        assert!(parse_expr("(x").is_err());
        assert!(parse_expr("x^y").is_err());
        assert!(parse_expr("X[0,1]").is_err());
    }
}
