//! Parser for the text form of polynomials.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := ['-'|'+'] term (('+'|'-') term)*
//! term   := power (('*'|'/') power)*        // '/' only by a constant
//! power  := atom ('^' integer)?
//! atom   := integer | symbol | 'z' | macro | '(' expr ')' | '-' atom
//! ```

use std::collections::HashMap;
use std::str::FromStr;

use super::poly::GradedPoly;
use super::symbol::Symbol;
use super::PolyError;
use crate::exactnum::{Coeff, Rational};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>, PolyError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
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
            out.push(Tok::Num(chars[start..i].iter().collect()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(PolyError::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a, C: Coeff> {
    toks: Vec<Tok>,
    pos: usize,
    macros: &'a HashMap<String, GradedPoly<C>>,
}

impl<C: Coeff> Parser<'_, C> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat_op(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<GradedPoly<C>, PolyError> {
        let mut acc = if self.eat_op('-') {
            self.term()?.neg()
        } else {
            self.eat_op('+');
            self.term()?
        };
        loop {
            if self.eat_op('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat_op('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<GradedPoly<C>, PolyError> {
        let mut acc = self.power()?;
        loop {
            if self.eat_op('*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat_op('/') {
                let d = self.power()?;
                let d = d
                    .as_constant()
                    .and_then(|c| c.recip())
                    .ok_or_else(|| PolyError::Parse("division by a non-constant or zero".into()))?;
                acc = acc.scale(&d);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<GradedPoly<C>, PolyError> {
        let base = self.atom()?;
        if self.eat_op('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.parse().map_err(|_| PolyError::Parse(format!("bad exponent {n}")))?;
                    Ok(base.pow(e))
                }
                other => Err(PolyError::Parse(format!("expected exponent, found {other:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<GradedPoly<C>, PolyError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let r: Rational = n.parse().map_err(|e| PolyError::Parse(format!("{e}")))?;
                Ok(GradedPoly::from_rational(r))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(p) = self.macros.get(&name) {
                    return Ok(p.clone());
                }
                if name == "z" {
                    return C::zeta()
                        .map(GradedPoly::constant)
                        .ok_or_else(|| PolyError::Parse("z is not available over Q".into()));
                }
                let s = Symbol::from_str(&name).map_err(|e| PolyError::Parse(e.to_string()))?;
                Ok(GradedPoly::symbol(s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat_op(')') {
                    return Err(PolyError::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.power()?.neg())
            }
            other => Err(PolyError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses `s`, resolving identifiers in `macros` before the symbol table.
pub fn parse_with<C: Coeff>(
    s: &str,
    macros: &HashMap<String, GradedPoly<C>>,
) -> Result<GradedPoly<C>, PolyError> {
    let mut p = Parser { toks: lex(s)?, pos: 0, macros };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(PolyError::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(out)
}

impl<C: Coeff> FromStr for GradedPoly<C> {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_with(s, &HashMap::new())
    }
}
