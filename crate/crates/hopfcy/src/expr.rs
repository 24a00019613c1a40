//! Parser for the expression strings used in configuration files.
//!
//! Scalars are rational functions in the declared parameters (`1/(q-q^-1)`,
//! `-q^2`, `3/2`). Noncommutative expressions additionally admit algebra
//! variables and multiply words by concatenation (`u*v - q*v*u`).

use crate::scalars::{ScalarError, RF};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("unexpected character '{ch}' at offset {pos}")]
    BadChar { ch: char, pos: usize },
    #[error("unexpected end of expression")]
    Eof,
    #[error("unexpected token '{tok}' at offset {pos}")]
    Unexpected { tok: String, pos: usize },
    #[error("unknown identifier '{0}'")]
    Unknown(String),
    #[error("expected a scalar, found an expression involving algebra variables")]
    NotScalar,
    #[error("division by a non-scalar or zero expression")]
    BadDivision,
    #[error("negative power of a non-scalar expression")]
    BadPower,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Linear combination of words in algebra variables, indexed by position.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WordPoly {
    terms: BTreeMap<Vec<usize>, RF>,
}

impl WordPoly {
    pub fn scalar(c: RF) -> Self {
        let mut p = Self::default();
        p.push(Vec::new(), c);
        p
    }

    pub fn word(w: Vec<usize>) -> Self {
        let mut p = Self::default();
        p.push(w, RF::one());
        p
    }

    pub fn push(&mut self, w: Vec<usize>, c: RF) {
        let e = self.terms.entry(w).or_insert_with(RF::zero);
        *e = &*e + &c;
        self.terms.retain(|_, v| !v.is_zero());
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, RF> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_scalar(&self) -> Option<RF> {
        match self.terms.len() {
            0 => Some(RF::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.push(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &RF) -> Self {
        let mut out = Self::default();
        for (w, v) in &self.terms {
            out.push(w.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::default();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.push(w, x * y);
            }
        }
        out
    }

    /// Common word length, if every term has the same length.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(Vec::len);
        let first = lens.next()?;
        lens.all(|l| l == first).then_some(first)
    }

    pub fn render(&self, vars: &[String], params: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(w, c)| {
                let word: Vec<&str> = w.iter().map(|&i| vars[i].as_str()).collect();
                match (c.is_one(), w.is_empty()) {
                    (_, true) => c.render(params),
                    (true, false) => word.join("*"),
                    (false, false) => format!("({})*{}", c.render(params), word.join("*")),
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut n: i64 = 0;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                n = n * 10 + chars[i].1.to_digit(10).unwrap() as i64;
                i += 1;
            }
            out.push((Tok::Num(n), pos));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().map(|p| p.1).collect();
            out.push((Tok::Ident(name), pos));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), pos));
            i += 1;
        } else {
            return Err(ExprError::BadChar { ch: c, pos });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    params: &'a [String],
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self) -> ExprError {
        match self.toks.get(self.at) {
            None => ExprError::Eof,
            Some((t, pos)) => ExprError::Unexpected {
                tok: match t {
                    Tok::Num(n) => n.to_string(),
                    Tok::Ident(s) => s.clone(),
                    Tok::Op(c) => c.to_string(),
                },
                pos: *pos,
            },
        }
    }

    fn expr(&mut self) -> Result<WordPoly, ExprError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.add(&self.term()?.scale(&RF::from_int(-1)));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<WordPoly, ExprError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let d = self.unary()?.as_scalar().ok_or(ExprError::BadDivision)?;
                if d.is_zero() {
                    return Err(ExprError::BadDivision);
                }
                acc = acc.scale(&d.inv()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<WordPoly, ExprError> {
        if self.eat('-') {
            Ok(self.unary()?.scale(&RF::from_int(-1)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<WordPoly, ExprError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let k = self.exponent()?;
        if let Some(c) = base.as_scalar() {
            return Ok(WordPoly::scalar(c.pow(k)?));
        }
        if k < 0 {
            return Err(ExprError::BadPower);
        }
        let mut out = WordPoly::scalar(RF::one());
        for _ in 0..k {
            out = out.mul(&base);
        }
        Ok(out)
    }

    fn exponent(&mut self) -> Result<i64, ExprError> {
        let paren = self.eat('(');
        let neg = self.eat('-');
        let k = match self.peek() {
            Some(Tok::Num(n)) => *n,
            _ => return Err(self.unexpected()),
        };
        self.at += 1;
        if paren && !self.eat(')') {
            return Err(self.unexpected());
        }
        Ok(if neg { -k } else { k })
    }

    fn atom(&mut self) -> Result<WordPoly, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(WordPoly::scalar(RF::from_int(n)))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if let Some(i) = self.params.iter().position(|p| *p == name) {
                    Ok(WordPoly::scalar(RF::param(i)))
                } else if let Some(i) = self.vars.iter().position(|v| *v == name) {
                    Ok(WordPoly::word(vec![i]))
                } else {
                    Err(ExprError::Unknown(name))
                }
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.unexpected());
                }
                Ok(e)
            }
            _ => Err(self.unexpected()),
        }
    }
}

pub fn parse_words(src: &str, params: &[String], vars: &[String]) -> Result<WordPoly, ExprError> {
    let mut p = Parser { toks: lex(src)?, at: 0, params, vars };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return Err(p.unexpected());
    }
    Ok(e)
}

pub fn parse_scalar(src: &str, params: &[String]) -> Result<RF, ExprError> {
    parse_words(src, params, &[])?.as_scalar().ok_or(ExprError::NotScalar)
}
