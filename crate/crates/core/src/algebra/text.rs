//! Canonical text form, e.g. `3/2*a^2*b - 8*g`.
//!
//! Terms are printed from the largest monomial down in the monomial order;
//! even generators come first with `^` exponents, odd generators follow in
//! ascending order. The parser accepts `+ - * / ^`, parentheses, integer
//! literals and generator names; division is only by nonzero constants.

use std::sync::Arc;

use super::element::Element;
use super::monomial::Monomial;
use super::signature::{iter_bits, Signature};
use crate::error::{Error, Result};
use crate::scalar::Coefficient;

pub fn monomial_text(m: &Monomial, sig: &Signature, rename: &dyn Fn(&str) -> String) -> String {
    let mut factors = Vec::new();
    for (e, g) in m.even().iter().zip(sig.even()) {
        match e {
            0 => {}
            1 => factors.push(rename(&g.name)),
            e => factors.push(format!("{}^{}", rename(&g.name), e)),
        }
    }
    for i in iter_bits(m.odd()) {
        factors.push(rename(&sig.odd()[i].name));
    }
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    }
}

pub fn to_text<C: Coefficient>(x: &Element<C>, rename: &dyn Fn(&str) -> String) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let sig = x.signature();
    let mut out = String::new();
    for (k, (m, c)) in x.terms().rev().enumerate() {
        let negative = c.is_negative();
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let magnitude = c.abs_value();
        if m.is_one() {
            out.push_str(&magnitude.to_string());
        } else {
            if magnitude != C::one() {
                out.push_str(&magnitude.to_string());
                out.push('*');
            }
            out.push_str(&monomial_text(m, sig, rename));
        }
    }
    out
}

pub fn parse<C: Coefficient>(text: &str, sig: &Arc<Signature>) -> Result<Element<C>> {
    parse_with_aliases(text, sig, &[])
}

/// Parses `text`, mapping any name in `aliases` (`(alias, generator)`) to
/// the generator it stands for.
pub fn parse_with_aliases<C: Coefficient>(
    text: &str,
    sig: &Arc<Signature>,
    aliases: &[(&str, &str)],
) -> Result<Element<C>> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        sig,
        aliases,
        end: text.len(),
    };
    let value = parser.expr()?;
    if let Some((at, tok)) = parser.tokens.get(parser.pos) {
        return Err(Error::parse(*at, format!("unexpected token {tok:?}")));
    }
    Ok(value)
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(String),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Token::Number(text[start..i].to_string())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Token::Ident(text[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Token::Op(c)));
            i += 1;
        } else {
            return Err(Error::parse(i, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    sig: &'a Arc<Signature>,
    aliases: &'a [(&'a str, &'a str)],
    end: usize,
}

impl Parser<'_> {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some((_, Token::Op(c))) => Some(*c),
            _ => None,
        }
    }

    fn position(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn expr<C: Coefficient>(&mut self) -> Result<Element<C>> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term<C: Coefficient>(&mut self) -> Result<Element<C>> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            let at = self.position();
            self.pos += 1;
            let rhs: Element<C> = self.unary()?;
            if op == '*' {
                acc = &acc * &rhs;
            } else {
                let c = rhs.constant_term();
                if rhs.len() > 1 || (!rhs.is_zero() && rhs.top_degree() != Some(0)) {
                    return Err(Error::parse(at, "division by a non-constant"));
                }
                if c.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                acc = acc.scale(&(C::one() / c));
            }
        }
        Ok(acc)
    }

    fn unary<C: Coefficient>(&mut self) -> Result<Element<C>> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power<C: Coefficient>(&mut self) -> Result<Element<C>> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            let at = self.position();
            match self.tokens.get(self.pos) {
                Some((_, Token::Number(n))) => {
                    let exp: u32 = n
                        .parse()
                        .map_err(|_| Error::parse(at, format!("exponent {n} too large")))?;
                    self.pos += 1;
                    Ok(base.pow(exp))
                }
                _ => Err(Error::parse(at, "expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom<C: Coefficient>(&mut self) -> Result<Element<C>> {
        let at = self.position();
        let token = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::parse(at, "unexpected end of input"))?;
        self.pos += 1;
        match token.1 {
            Token::Number(n) => {
                let c: C = n
                    .parse()
                    .map_err(|_| Error::parse(at, format!("bad number {n}")))?;
                Ok(Element::constant(self.sig, c))
            }
            Token::Ident(name) => {
                let resolved = self
                    .aliases
                    .iter()
                    .find(|(alias, _)| *alias == name)
                    .map_or(name.as_str(), |(_, target)| target);
                Element::generator(self.sig, resolved)
            }
            Token::Op('(') => {
                let inner = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(Error::parse(self.position(), "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Token::Op(c) => Err(Error::parse(at, format!("unexpected `{c}`"))),
        }
    }
}
