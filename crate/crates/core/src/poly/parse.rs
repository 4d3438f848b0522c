//! Text syntax for polynomials.
//!
//! Terms are `c*x^k` joined by `+`/`-`, with `c` an integer or fraction
//! `p/q`; the `*` and `^0`/`^1` parts may be elided, so `x^2 + 1/2*x^5`,
//! `5 - 2x` and `3/2x + x^2` all parse. Bivariate input uses `y` the same
//! way, with univariate coefficients optionally parenthesised, e.g.
//! `(-3/2*x)*y^2 + y^3`. The printers in this crate emit a subset of the
//! syntax that parses back to the same value.

use num_bigint::BigInt;

use crate::poly::{ParseError, UniPoly};
use crate::{Poly, Poly2, Rat};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Var(char),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let mut tokens = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                tokens.push((i, Token::Plus));
                i += 1;
            }
            '-' => {
                tokens.push((i, Token::Minus));
                i += 1;
            }
            '*' => {
                tokens.push((i, Token::Star));
                i += 1;
            }
            '/' => {
                tokens.push((i, Token::Slash));
                i += 1;
            }
            '^' => {
                tokens.push((i, Token::Caret));
                i += 1;
            }
            '(' => {
                tokens.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                tokens.push((i, Token::RParen));
                i += 1;
            }
            'x' | 'y' => {
                tokens.push((i, Token::Var(c)));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &s[start..i];
                let value = digits.parse::<BigInt>().map_err(|e| ParseError {
                    pos: start,
                    msg: format!("bad integer literal: {e}"),
                })?;
                tokens.push((start, Token::Int(value)));
            }
            other => {
                return Err(ParseError {
                    pos: i,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    input_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.input_len)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn fail<V>(&self, msg: impl Into<String>) -> Result<V, ParseError> {
        Err(ParseError {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Poly2, ParseError> {
        let mut negate = false;
        match self.peek() {
            Some(Token::Minus) => {
                self.bump();
                negate = true;
            }
            Some(Token::Plus) => {
                self.bump();
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc + t;
                }
                Some(Token::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc - t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly2, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    acc = acc * self.factor()?;
                }
                // implicit multiplication, as in `2x` or `3/2x`
                Some(Token::Int(_)) | Some(Token::Var(_)) | Some(Token::LParen) => {
                    acc = acc * self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly2, ParseError> {
        let base = match self.bump() {
            Some(Token::Int(n)) => {
                if matches!(self.peek(), Some(Token::Slash)) {
                    self.bump();
                    match self.bump() {
                        Some(Token::Int(d)) => {
                            if d == BigInt::from(0) {
                                return self.fail("zero denominator");
                            }
                            return Ok(Poly2::constant(UniPoly::constant(Rat::new(n, d))));
                        }
                        _ => return self.fail("expected denominator after '/'"),
                    }
                }
                Poly2::constant(UniPoly::constant(Rat::from_integer(n)))
            }
            Some(Token::Var(v)) => {
                let k = self.exponent()?;
                match v {
                    'x' => Poly2::constant(UniPoly::monomial(Rat::from_integer(1.into()), k)),
                    _ => Poly2::monomial_y(UniPoly::one(), k),
                }
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => {}
                    _ => return self.fail("expected ')'"),
                }
                let k = self.exponent()?;
                let mut acc = Poly2::one();
                for _ in 0..k {
                    acc = acc * inner.clone();
                }
                if k == 1 {
                    inner
                } else {
                    acc
                }
            }
            _ => return self.fail("expected a term"),
        };
        Ok(base)
    }

    /// Optional `^k` suffix; absent means exponent 1.
    fn exponent(&mut self) -> Result<usize, ParseError> {
        if !matches!(self.peek(), Some(Token::Caret)) {
            return Ok(1);
        }
        self.bump();
        match self.bump() {
            Some(Token::Int(n)) => {
                let Some(k) = n.to_string().parse::<usize>().ok() else {
                    return self.fail("exponent does not fit");
                };
                Ok(k)
            }
            _ => self.fail("expected a nonnegative exponent after '^'"),
        }
    }
}

fn parse_expr(s: &str) -> Result<Poly2, ParseError> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(ParseError {
            pos: 0,
            msg: "empty input".into(),
        });
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        input_len: s.len(),
    };
    let value = parser.expr()?;
    if parser.peek().is_some() {
        return parser.fail("trailing input");
    }
    Ok(value)
}

/// Parses a bivariate polynomial in `x` and `y`.
pub fn parse_bipoly(s: &str) -> Result<Poly2, ParseError> {
    parse_expr(s)
}

/// Parses a univariate polynomial in `x`; `y` is rejected.
pub fn parse_unipoly(s: &str) -> Result<Poly, ParseError> {
    let p = parse_expr(s)?;
    match p.degree_y() {
        None | Some(0) => Ok(p.y_coeff(0)),
        Some(_) => Err(ParseError {
            pos: 0,
            msg: "expected a polynomial in x only, found y".into(),
        }),
    }
}

/// Parses a univariate polynomial written in either `x` or `y` (but not
/// both); handy for CLI input where Morse polynomials are usually in `y`.
pub fn parse_univariate(s: &str) -> Result<Poly, ParseError> {
    let p = parse_expr(s)?;
    match p.degree_y() {
        None | Some(0) => Ok(p.y_coeff(0)),
        Some(_) => {
            let mut coeffs = Vec::new();
            for c in p.y_coeffs() {
                match c.degree() {
                    None | Some(0) => coeffs.push(c.coeff(0)),
                    Some(_) => {
                        return Err(ParseError {
                            pos: 0,
                            msg: "polynomial mixes x and y".into(),
                        })
                    }
                }
            }
            Ok(Poly::from_coeffs(coeffs))
        }
    }
}
