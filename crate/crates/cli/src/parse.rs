//! Expressions in one variable `x` with exact rational constants.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := base ('^' ['-'] int)?
//! base   := int | 'x' | '(' expr ')'
//! ```
//!
//! A rational literal `p/q` is simply a division of integers.

use num_bigint::BigInt;
use pillai_core::{RatFunc, Rational};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("parse error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("division by zero at offset {offset}")]
    DivisionByZero { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::DivisionByZero { offset } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    X,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Divisor offset kept for error reporting.
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, i64, usize),
}

impl Expr {
    pub fn eval(&self) -> Result<RatFunc, ParseError> {
        Ok(match self {
            Expr::Int(n) => RatFunc::constant(Rational::from_integer(n.clone())),
            Expr::X => RatFunc::x(),
            Expr::Neg(e) => -e.eval()?,
            Expr::Add(a, b) => a.eval()? + b.eval()?,
            Expr::Sub(a, b) => a.eval()? - b.eval()?,
            Expr::Mul(a, b) => a.eval()? * b.eval()?,
            Expr::Div(a, b, at) => {
                let d = b.eval()?;
                if d.is_zero() {
                    return Err(ParseError::DivisionByZero { offset: *at });
                }
                a.eval()? * d.inv().expect("nonzero")
            }
            Expr::Pow(b, k, at) => b.eval()?.pow(*k).map_err(|_| ParseError::DivisionByZero { offset: *at })?,
        })
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { offset: self.pos, message: message.into() })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                self.skip_ws();
                let at = self.pos;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), at);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let negative = self.eat(b'-');
        self.skip_ws();
        let digits = self.digits();
        if digits.is_empty() {
            return self.error("expected integer exponent");
        }
        let k: i64 = match digits.parse() {
            Ok(k) => k,
            Err(_) => return Err(ParseError::Syntax { offset: at, message: "exponent out of range".into() }),
        };
        Ok(Expr::Pow(Box::new(base), if negative { -k } else { k }, at))
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(Expr::X)
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.error("expected ')'");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                Ok(Expr::Int(d.parse().expect("decimal digits")))
            }
            Some(_) => self.error("expected a number, 'x' or '('"),
            None => self.error("unexpected end of input"),
        }
    }
}

pub fn parse_ast(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

pub fn parse_expression(text: &str) -> Result<RatFunc, ParseError> {
    parse_ast(text)?.eval()
}

#[cfg(test)]
mod tests {
    use super::*;
    use pillai_core::Poly;

    #[test]
    fn examples() {
        assert_eq!(parse_expression("x^2 - x - 1").unwrap(), RatFunc::from(Poly::from_ints(&[-1, -1, 1])));
        assert_eq!(parse_expression("(x^2-1)/(x-1)").unwrap(), RatFunc::from(Poly::from_ints(&[1, 1])));
        assert_eq!(parse_expression("x^^2").unwrap_err().offset(), 2);
        assert_eq!(parse_expression("-x^2").unwrap(), RatFunc::from(Poly::from_ints(&[0, 0, -1])));
        assert_eq!(parse_expression("x^-1").unwrap(), RatFunc::x().inv().unwrap());
        assert_eq!(parse_expression("3/6*x").unwrap().to_string(), "1/2*x");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_expression("1/(x-x)"), Err(ParseError::DivisionByZero { offset: 2 })));
        assert!(matches!(parse_expression("(x + 1"), Err(ParseError::Syntax { offset: 6, .. })));
        assert!(matches!(parse_expression("x y"), Err(ParseError::Syntax { offset: 2, .. })));
        assert!(matches!(parse_expression(""), Err(ParseError::Syntax { offset: 0, .. })));
        assert!(matches!(parse_expression("0^-1"), Err(ParseError::DivisionByZero { .. })));
    }

    #[test]
    fn display_round_trip() {
        for s in ["x^2/(x + 1)", "(x - 1)/x", "1/2*x - 3/4", "-2*x", "-3/2", "(x^3 - 7)/(x^2 + 1/3*x)"] {
            let f = parse_expression(s).unwrap();
            assert_eq!(parse_expression(&f.to_string()).unwrap(), f, "{s}");
        }
    }
}
