//! expr := sum ">=" sum
//! sum  := term ("+" term)*
//! term := number? resource
//! resource := "[c->c]" | "[q->q]" | "[qq]" | "[cc]" | "<" ident ">"
//!
//! Whitespace is ignored between tokens and inside brackets.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec::Vec;

use super::{canonical, Resource, ResourceExpr, ResourceTerm, RiError};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn err(&self, at: usize, message: &str) -> RiError {
        RiError::Syntax { offset: at, message: message.to_owned() }
    }

    fn expect(&mut self, want: &str, what: &str) -> Result<(), RiError> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(want) {
            self.pos += want.len();
            Ok(())
        } else {
            Err(self.err(self.pos, what))
        }
    }

    fn number(&mut self) -> Result<Option<f64>, RiError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some('0'..='9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Ok(None);
        }
        if self.peek() == Some('.') {
            self.pos += 1;
            let frac = self.pos;
            while matches!(self.peek(), Some('0'..='9')) {
                self.pos += 1;
            }
            if self.pos == frac {
                return Err(self.err(self.pos, "expected digits after the decimal point"));
            }
        }
        let text = &self.src[start..self.pos];
        text.parse::<f64>().map(Some).map_err(|_| self.err(start, "malformed number"))
    }

    fn resource(&mut self) -> Result<(usize, Resource), RiError> {
        self.skip_ws();
        let start = self.pos;
        match self.bump() {
            Some('[') => {
                let mut token = String::new();
                loop {
                    match self.bump() {
                        Some(']') => break,
                        Some(c) if c.is_whitespace() => {}
                        Some(c) => token.push(c),
                        None => return Err(self.err(start, "unterminated `[`")),
                    }
                }
                let r = match token.as_str() {
                    "c->c" => Resource::Cbit,
                    "q->q" => Resource::Qubit,
                    "qq" => Resource::Ebit,
                    "cc" => Resource::CommonRandomness,
                    _ => {
                        let mut shown = String::from("[");
                        shown.push_str(&token);
                        shown.push(']');
                        return Err(RiError::UnknownResource { offset: start, token: shown });
                    }
                };
                Ok((start, r))
            }
            Some('<') => {
                self.skip_ws();
                let id_start = self.pos;
                match self.peek() {
                    Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
                    _ => return Err(self.err(id_start, "expected a resource name after `<`")),
                }
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '\'') {
                    self.pos += 1;
                }
                let name = self.src[id_start..self.pos].to_owned();
                self.expect(">", "expected `>` after the resource name")?;
                Ok((start, Resource::Noisy(name)))
            }
            Some(_) => Err(self.err(start, "expected a resource")),
            None => Err(self.err(start, "unexpected end of input")),
        }
    }

    fn sum(&mut self) -> Result<Vec<(usize, ResourceTerm)>, RiError> {
        let mut terms = Vec::new();
        loop {
            self.skip_ws();
            let at = self.pos;
            let coefficient = self.number()?;
            let (_, resource) = self.resource()?;
            terms.push((at, ResourceTerm { coefficient: coefficient.unwrap_or(1.0), resource }));
            self.skip_ws();
            if self.peek() == Some('+') {
                self.pos += 1;
            } else {
                return Ok(terms);
            }
        }
    }
}

fn finish_side(terms: Vec<(usize, ResourceTerm)>) -> Result<Vec<ResourceTerm>, RiError> {
    // Noisy resources are single opaque uses.
    let mut seen: Vec<&str> = Vec::new();
    for (at, t) in &terms {
        if let Resource::Noisy(name) = &t.resource {
            if t.coefficient != 1.0 || seen.contains(&name.as_str()) {
                return Err(RiError::NoisyMultiplicity { offset: *at, name: name.clone() });
            }
            seen.push(name);
        }
    }
    Ok(canonical(terms.into_iter().map(|(_, t)| t).collect()))
}

pub fn parse(text: &str) -> Result<ResourceExpr, RiError> {
    let mut c = Cursor { src: text, pos: 0 };
    let lhs = c.sum()?;
    c.expect(">=", "expected `>=` or `+`")?;
    let rhs = c.sum()?;
    c.skip_ws();
    if c.pos != text.len() {
        return Err(c.err(c.pos, "unexpected trailing input"));
    }
    Ok(ResourceExpr { lhs: finish_side(lhs)?, rhs: finish_side(rhs)? })
}
