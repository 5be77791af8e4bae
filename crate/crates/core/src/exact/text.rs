use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{BigRational, ExactNumber, QuadraticSurd};
use crate::{Error, Result};

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.b().is_negative() { '-' } else { '+' };
        write!(
            f,
            "({}{}{}*sqrt({}))/{}",
            self.a(),
            op,
            self.b().abs(),
            self.radicand(),
            self.c()
        )
    }
}

impl fmt::Display for ExactNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactNumber::Rational(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            ExactNumber::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            ExactNumber::Surd(s) => s.fmt(f),
        }
    }
}

impl FromStr for ExactNumber {
    type Err = Error;

    /// Parses integers, `p/q`, `sqrt(D)` and arithmetic over them with
    /// `+ - * /` and parentheses, e.g. `(a+b*sqrt(D))/c` or `-2+sqrt(10)`.
    /// Decimal fractions are rejected.
    fn from_str(s: &str) -> Result<Self> {
        let tokens = lex(s)?;
        let mut p = Parser { tokens, pos: 0 };
        let value = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Parse(format_err("unexpected trailing input", s)));
        }
        Ok(value)
    }
}

fn format_err(what: &str, input: &str) -> String {
    let mut m = what.to_string();
    m.push_str(" in ");
    m.push_str(input.trim());
    m
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Sqrt,
    Plus,
    Minus,
    Star,
    Slash,
    Open,
    Close,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = s.char_indices().peekable();
    while let Some(&(i, ch)) = chars.peek() {
        match ch {
            c if c.is_whitespace() => {
                chars.next();
            }
            '0'..='9' => {
                let mut end = i;
                while let Some(&(j, c)) = chars.peek() {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    end = j + 1;
                    chars.next();
                }
                if matches!(chars.peek(), Some(&(_, '.'))) {
                    return Err(Error::Parse(format_err("decimal input is not exact", s)));
                }
                out.push(Tok::Int(s[i..end].parse().expect("digits")));
            }
            '+' => {
                chars.next();
                out.push(Tok::Plus);
            }
            '-' | '−' => {
                chars.next();
                out.push(Tok::Minus);
            }
            '*' => {
                chars.next();
                out.push(Tok::Star);
            }
            '/' => {
                chars.next();
                out.push(Tok::Slash);
            }
            '(' => {
                chars.next();
                out.push(Tok::Open);
            }
            ')' => {
                chars.next();
                out.push(Tok::Close);
            }
            '√' => {
                chars.next();
                out.push(Tok::Sqrt);
            }
            's' if s[i..].starts_with("sqrt") => {
                for _ in 0..4 {
                    chars.next();
                }
                out.push(Tok::Sqrt);
            }
            '.' => return Err(Error::Parse(format_err("decimal input is not exact", s))),
            _ => return Err(Error::Parse(format_err("unexpected character", s))),
        }
    }
    if out.is_empty() {
        return Err(Error::Parse("empty number".to_string()));
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<ExactNumber> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc.checked_add(&self.term()?)?;
            } else if self.eat(&Tok::Minus) {
                acc = acc.checked_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ExactNumber> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = acc.checked_mul(&self.unary()?)?;
            } else if self.eat(&Tok::Slash) {
                acc = acc.checked_div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<ExactNumber> {
        if self.eat(&Tok::Minus) {
            return Ok(self.unary()?.neg());
        }
        if self.eat(&Tok::Plus) {
            return self.unary();
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<ExactNumber> {
        match self.tokens.get(self.pos).cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(ExactNumber::Rational(BigRational::from_integer(n)))
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(&Tok::Close) {
                    return Err(Error::Parse("missing ')'".to_string()));
                }
                Ok(v)
            }
            Some(Tok::Sqrt) => {
                self.pos += 1;
                let arg = if self.eat(&Tok::Open) {
                    let v = self.expr()?;
                    if !self.eat(&Tok::Close) {
                        return Err(Error::Parse("missing ')' after sqrt".to_string()));
                    }
                    v
                } else {
                    self.atom()?
                };
                match arg.as_rational() {
                    Some(r) if r.is_integer() => {
                        if r.is_negative() {
                            return Err(Error::NegativeInput);
                        }
                        ExactNumber::sqrt(r.numer().clone())
                    }
                    _ => Err(Error::Parse("sqrt takes a non-negative integer".to_string())),
                }
            }
            _ => Err(Error::Parse("expected a number".to_string())),
        }
    }
}
