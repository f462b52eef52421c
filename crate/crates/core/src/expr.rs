//! Expression syntax for rational functions.
//!
//! Grammar: `+ - * / ^ ( )`, integers (read mod p), one variable, the
//! generator `w`, named constants and the functions `root` (p-th root) and
//! `frob` (Frobenius) applied to constant subexpressions. Juxtaposition
//! multiplies, so `2y` and `(y-1)(y+1)` are accepted.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::ffield::{Fq, GaloisField};
use crate::ratfunc::{RatError, RationalFunction};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error(transparent)]
    Rat(#[from] RatError),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse().map_err(|_| ExprError::Parse {
                pos: start,
                msg: "integer literal too large".into(),
            })?;
            out.push((start, Tok::Num(n)));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(ExprError::Parse {
                pos: i,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    field: &'a GaloisField,
    var: &'a str,
    bindings: &'a BTreeMap<String, Fq>,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Parse {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalFunction, ExprError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')))
    }

    fn term(&mut self) -> Result<RationalFunction, ExprError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let at = self.here();
                let d = self.unary()?;
                acc = acc.checked_div(&d).map_err(|e| match e {
                    RatError::DivisionByZero => ExprError::Parse {
                        pos: at,
                        msg: "division by zero".into(),
                    },
                    other => other.into(),
                })?;
            } else if self.starts_atom() {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction, ExprError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction, ExprError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let at = self.here();
        let e = match self.peek() {
            Some(Tok::Num(n)) => *n as i64,
            _ => return self.err("expected integer exponent"),
        };
        self.pos += 1;
        let e = if neg { -e } else { e };
        base.pow(e).map_err(|_| ExprError::Parse {
            pos: at,
            msg: "negative power of zero".into(),
        })
    }

    fn atom(&mut self) -> Result<RationalFunction, ExprError> {
        let f = self.field;
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(RationalFunction::constant(f, f.from_int((n % f.p() as u64) as i64)))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Some(Tok::Ident(name)) => {
                let at = self.here();
                self.pos += 1;
                if self.peek() == Some(&Tok::Op('(')) && (name == "root" || name == "frob") {
                    self.pos += 1;
                    let inner = self.expr()?;
                    if !self.eat(')') {
                        return self.err("expected ')'");
                    }
                    let c = inner.as_constant().ok_or(ExprError::Parse {
                        pos: at,
                        msg: format!("{name}() needs a constant argument"),
                    })?;
                    let v = if name == "root" { f.pth_root(c) } else { f.frobenius(c) };
                    return Ok(RationalFunction::constant(f, v));
                }
                if name == self.var {
                    return Ok(RationalFunction::var(f));
                }
                if let Some(&c) = self.bindings.get(&name) {
                    return Ok(RationalFunction::constant(f, c));
                }
                if name == "w" {
                    return Ok(RationalFunction::constant(f, f.generator()));
                }
                Err(ExprError::Parse {
                    pos: at,
                    msg: format!("unknown identifier '{name}'"),
                })
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `src` as a rational function in the variable `var`.
pub fn parse_rational(
    field: &GaloisField,
    src: &str,
    var: &str,
    bindings: &BTreeMap<String, Fq>,
) -> Result<RationalFunction, ExprError> {
    let toks = lex(src)?;
    let mut p = Parser {
        field,
        var,
        bindings,
        toks,
        pos: 0,
        end: src.chars().count(),
    };
    let r = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(r)
}

/// Parses a binding of the form `name=element`.
pub fn parse_binding(field: &GaloisField, s: &str) -> Result<(String, Fq), ExprError> {
    let (name, val) = s.split_once('=').ok_or(ExprError::Parse {
        pos: 0,
        msg: format!("binding '{s}' must look like name=value"),
    })?;
    let name = name.trim();
    if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
        return Err(ExprError::Parse {
            pos: 0,
            msg: format!("invalid binding name '{name}'"),
        });
    }
    let v = parse_rational(field, val, "", &BTreeMap::new())?
        .as_constant()
        .ok_or(ExprError::Parse {
            pos: name.len() + 1,
            msg: "binding value must be a constant".into(),
        })?;
    Ok((name.to_string(), v))
}
