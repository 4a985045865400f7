//! A small parser for polynomial expressions such as `x^2 - 3*x*y + 1`.
//!
//! Expressions are parsed into an [`Expr`] tree and then evaluated in any
//! commutative ring implementing [`ExprRing`], which lets the same syntax
//! describe ideal generators of a polynomial quotient and elements of an
//! already built algebra.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub input: String,
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse `{}` at offset {}: {}", self.input, self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

pub trait ExprRing {
    type Elem: Clone;
    fn constant(&self, c: i64) -> Self::Elem;
    fn variable(&self, name: &str) -> Option<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
}

impl Expr {
    pub fn eval<R: ExprRing>(&self, ring: &R) -> Result<R::Elem, String> {
        Ok(match self {
            Expr::Int(c) => ring.constant(*c),
            Expr::Var(v) => ring.variable(v).ok_or_else(|| format!("unknown variable `{v}`"))?,
            Expr::Add(a, b) => ring.add(&a.eval(ring)?, &b.eval(ring)?),
            Expr::Sub(a, b) => ring.add(&a.eval(ring)?, &ring.neg(&b.eval(ring)?)),
            Expr::Mul(a, b) => ring.mul(&a.eval(ring)?, &b.eval(ring)?),
            Expr::Neg(a) => ring.neg(&a.eval(ring)?),
            Expr::Pow(a, e) => {
                let base = a.eval(ring)?;
                let mut acc = ring.constant(1);
                for _ in 0..*e {
                    acc = ring.mul(&acc, &base);
                }
                acc
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Parser<'a> {
    input: &'a str,
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

fn tokenize(input: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let err = |position: usize, message: &str| ParseError {
        input: input.to_string(),
        position,
        message: message.to_string(),
    };
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push((i, Token::Plus));
                i += 1
            }
            '-' => {
                out.push((i, Token::Minus));
                i += 1
            }
            '*' => {
                out.push((i, Token::Star));
                i += 1
            }
            '^' => {
                out.push((i, Token::Caret));
                i += 1
            }
            '(' => {
                out.push((i, Token::LParen));
                i += 1
            }
            ')' => {
                out.push((i, Token::RParen));
                i += 1
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v = input[start..i].parse().map_err(|_| err(start, "integer too large"))?;
                out.push((start, Token::Int(v)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(input[start..i].to_string())));
            }
            _ => return Err(err(i, "unexpected character")),
        }
    }
    Ok(out)
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.input.len(), |(o, _)| *o)
    }

    fn error(&self, message: &str) -> ParseError {
        ParseError { input: self.input.to_string(), position: self.offset(), message: message.into() }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Expr::Neg(Box::new(self.term()?))
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                // juxtaposition, as in `2x` or `x(y+1)`
                Some(Token::Ident(_)) | Some(Token::LParen) | Some(Token::Int(_)) => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Token::Int(e)) if e >= 0 && e <= u32::MAX as i64 => {
                    self.pos += 1;
                    return Ok(Expr::Pow(Box::new(base), e as u32));
                }
                _ => return Err(self.error("expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Token::Int(v)) => {
                self.pos += 1;
                Ok(Expr::Int(v))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Var(name))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.error("expected a number, variable or `(`")),
        }
    }
}

pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(input)?;
    let mut parser = Parser { input, tokens, pos: 0 };
    let e = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(e)
}
