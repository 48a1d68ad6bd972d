//! Series expression parser.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*      juxtaposition multiplies
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' exponent)?
//! atom   := integer | 'x' | '(' expr ')'
//! exponent := ('-' | '+')? integer | '(' ('-' | '+')? integer ')'
//! ```
//!
//! Division expands the divisor's reciprocal on the requested side, so
//! `1/(1-x)` below is `1 + x + x^2 + ...` and above is `-x^-1 - x^-2 - ...`.

use std::str::FromStr;

use num_bigint::BigInt;

use super::{LaurentSeries, Side};
use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug)]
enum Expr {
    Int(BigInt),
    X,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

/// Parse `text` as a series on `side`. Laurent polynomials come back exact;
/// anything involving a genuine division is expanded until at least `prec`
/// coefficients past the order are known, and until the known region
/// reaches `x^prec` (below) or `x^-prec` (above).
pub fn parse<F: Field>(text: &str, side: Side, prec: usize) -> Result<LaurentSeries<F>> {
    let expr = Parser::new(text).parse_all()?;
    let prec = prec.max(1);
    let target = prec as i64;
    let mut wp = prec;
    loop {
        let v = eval::<F>(&expr, side, wp)?;
        if v.is_exact() {
            return v.viewed(side);
        }
        let oriented = v.to_below(side);
        let b = oriented.bound.expect("non-exact");
        let order = oriented.low().filter(|_| !oriented.coeffs.is_empty());
        let done = match order {
            Some(m) => b - m >= target && b >= target,
            None => b >= target,
        };
        if done || wp > prec.saturating_mul(64) + 1024 {
            let cut = match order {
                Some(m) => target.max(m + target),
                None => target,
            };
            let cut = oriented.with_precision(cut);
            return Ok(cut.oriented_to(side));
        }
        wp *= 2;
    }
}

fn eval<F: Field>(e: &Expr, side: Side, wp: usize) -> Result<LaurentSeries<F>> {
    Ok(match e {
        Expr::Int(n) => LaurentSeries::constant(F::from_bigint(n)),
        Expr::X => LaurentSeries::x(),
        Expr::Neg(a) => eval::<F>(a, side, wp)?.neg(),
        Expr::Add(a, b) => eval::<F>(a, side, wp)?.add(&eval(b, side, wp)?)?,
        Expr::Sub(a, b) => eval::<F>(a, side, wp)?.sub(&eval(b, side, wp)?)?,
        Expr::Mul(a, b) => eval::<F>(a, side, wp)?.mul(&eval(b, side, wp)?)?,
        Expr::Div(a, b) => {
            let d = eval::<F>(b, side, wp)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            eval::<F>(a, side, wp)?.mul(&d.recip(side, wp)?)?
        }
        Expr::Pow(a, j) => {
            let base = eval::<F>(a, side, wp)?;
            if *j < 0 && base.is_zero() {
                return Err(Error::DivisionByZero);
            }
            base.pow(*j, side, wp)?
        }
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
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

    fn parse_all(mut self) -> Result<Expr> {
        if self.peek().is_none() {
            return self.err("empty expression");
        }
        let e = self.expr()?;
        match self.peek() {
            None => Ok(e),
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
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

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else if matches!(self.peek(), Some(b'x' | b'(' | b'0'..=b'9')) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let paren = self.eat(b'(');
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let n = self.integer()?;
        if paren && !self.eat(b')') {
            return self.err("expected ')'");
        }
        let n = match i64::try_from(&n) {
            Ok(n) if n <= 1 << 20 => n,
            _ => return self.err("exponent too large"),
        };
        Ok(Expr::Pow(Box::new(base), if neg { -n } else { n }))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(Expr::X)
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(b'0'..=b'9') => Ok(Expr::Int(self.integer()?)),
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.peek();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(BigInt::from_str(digits).expect("digits"))
    }
}
