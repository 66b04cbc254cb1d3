//! Recursive-descent parser for polynomial and element strings.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*      juxtaposition multiplies
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{LambdaContext, Poly, Rational, D_SYMBOL};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

struct Lexer;

impl Lexer {
    fn run(text: &str) -> Result<Vec<(Tok, usize)>> {
        let chars: Vec<char> = text.chars().collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((Tok::Num(s.parse().expect("digits")), col));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            } else if "+-*/^()".contains(c) {
                out.push((Tok::Sym(c), col));
                i += 1;
            } else {
                return Err(Error::Syntax { col, msg: format!("unexpected character `{c}`") });
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
enum Value {
    Scalar(Poly),
    Vector(Vec<Poly>),
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
    ctx: &'a LambdaContext,
    gens: Option<&'a [String]>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn err<T>(&self, col: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { col, msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        loop {
            let col = self.col();
            if self.eat('+') {
                let rhs = self.term()?;
                acc = self.add(acc, rhs, false, col)?;
            } else if self.eat('-') {
                let rhs = self.term()?;
                acc = self.add(acc, rhs, true, col)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.unary()?;
        loop {
            let col = self.col();
            match self.peek() {
                Some(Tok::Sym('*')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = self.mul(acc, rhs, col)?;
                }
                Some(Tok::Sym('/')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = self.div(acc, rhs, col)?;
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('(')) => {
                    let rhs = self.power()?;
                    acc = self.mul(acc, rhs, col)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Value> {
        if self.eat('-') {
            return Ok(match self.unary()? {
                Value::Scalar(p) => Value::Scalar(-p),
                Value::Vector(v) => Value::Vector(v.into_iter().map(|p| -p).collect()),
            });
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value> {
        let base = self.atom()?;
        let col = self.col();
        if !self.eat('^') {
            return Ok(base);
        }
        let exp_col = self.col();
        let e = match self.peek() {
            Some(Tok::Num(n)) => n.to_u32(),
            _ => return self.err(exp_col, "expected a non-negative integer exponent"),
        };
        self.pos += 1;
        let Some(e) = e else {
            return self.err(exp_col, "exponent too large");
        };
        match base {
            Value::Scalar(p) => Ok(Value::Scalar(p.pow(e))),
            Value::Vector(_) => self.err(col, "cannot raise a module element to a power"),
        }
    }

    fn atom(&mut self) -> Result<Value> {
        let col = self.col();
        let Some((tok, _)) = self.toks.get(self.pos).cloned() else {
            return self.err(col, "unexpected end of input");
        };
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(Value::Scalar(Poly::constant(self.ctx, Rational::from_integer(n)))),
            Tok::Ident(name) => self.ident(&name, col),
            Tok::Sym('(') => {
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err(self.col(), "expected `)`");
                }
                Ok(inner)
            }
            Tok::Sym(c) => self.err(col, format!("unexpected `{c}`")),
        }
    }

    fn ident(&self, name: &str, col: usize) -> Result<Value> {
        if name == D_SYMBOL {
            return Ok(Value::Scalar(Poly::d(self.ctx)));
        }
        if let Some(i) = self.ctx.index_of(name) {
            return Ok(Value::Scalar(Poly::slot_at(self.ctx, i)));
        }
        if let Some(gens) = self.gens {
            if let Some(k) = gens.iter().position(|g| g == name) {
                let mut v = vec![Poly::zero(self.ctx); gens.len()];
                v[k] = Poly::one(self.ctx);
                return Ok(Value::Vector(v));
            }
            return self.err(col, format!("unknown symbol `{name}`"));
        }
        Err(Error::Syntax { col, msg: Error::UnknownSlot(name.to_string()).to_string() })
    }

    fn add(&self, a: Value, b: Value, negate: bool, col: usize) -> Result<Value> {
        let b = if negate {
            match b {
                Value::Scalar(p) => Value::Scalar(-p),
                Value::Vector(v) => Value::Vector(v.into_iter().map(|p| -p).collect()),
            }
        } else {
            b
        };
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(&x + &y)),
            (Value::Vector(x), Value::Vector(y)) => {
                Ok(Value::Vector(x.iter().zip(&y).map(|(p, q)| p + q).collect()))
            }
            (Value::Scalar(s), v @ Value::Vector(_)) | (v @ Value::Vector(_), Value::Scalar(s))
                if s.is_zero() =>
            {
                Ok(v)
            }
            _ => self.err(col, "cannot add a polynomial to a module element"),
        }
    }

    fn mul(&self, a: Value, b: Value, col: usize) -> Result<Value> {
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(&x * &y)),
            (Value::Scalar(s), Value::Vector(v)) | (Value::Vector(v), Value::Scalar(s)) => {
                Ok(Value::Vector(v.iter().map(|p| &s * p).collect()))
            }
            _ => self.err(col, "cannot multiply two module elements"),
        }
    }

    fn div(&self, a: Value, b: Value, col: usize) -> Result<Value> {
        let c = match b {
            Value::Scalar(p) => match p.as_constant() {
                Some(c) if !c.is_zero() => c,
                Some(_) => return self.err(col, "division by zero"),
                None => return self.err(col, "division by a non-constant polynomial"),
            },
            Value::Vector(_) => return self.err(col, "division by a module element"),
        };
        let inv = c.recip();
        Ok(match a {
            Value::Scalar(p) => Value::Scalar(p.scale(&inv)),
            Value::Vector(v) => Value::Vector(v.iter().map(|p| p.scale(&inv)).collect()),
        })
    }
}

fn run(text: &str, ctx: &LambdaContext, gens: Option<&[String]>) -> Result<Value> {
    let toks = Lexer::run(text)?;
    let end_col = text.chars().count() + 1;
    if toks.is_empty() {
        return Err(Error::Syntax { col: end_col, msg: "empty expression".into() });
    }
    let mut p = Parser { toks, pos: 0, end_col, ctx, gens };
    let v = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err(p.col(), "unexpected trailing input");
    }
    Ok(v)
}

/// Parses a polynomial in `d` and the slots of `ctx`.
pub fn parse_poly(text: &str, ctx: &LambdaContext) -> Result<Poly> {
    match run(text, ctx, None)? {
        Value::Scalar(p) => Ok(p),
        Value::Vector(_) => unreachable!("no generators in scalar mode"),
    }
}

/// Parses a C[d]-linear combination of the named generators, returning one
/// coefficient polynomial per generator. A bare `0` is the zero element.
pub fn parse_linear(text: &str, ctx: &LambdaContext, gens: &[String]) -> Result<Vec<Poly>> {
    for g in gens {
        if g == D_SYMBOL || ctx.contains(g) {
            return Err(Error::invalid(format!("generator name `{g}` clashes with a slot")));
        }
    }
    match run(text, ctx, Some(gens))? {
        Value::Vector(v) => Ok(v),
        Value::Scalar(p) if p.is_zero() => Ok(vec![Poly::zero(ctx); gens.len()]),
        Value::Scalar(_) => Err(Error::Syntax {
            col: 1,
            msg: "expected a combination of generators".into(),
        }),
    }
}
