//! Polynomial text format.
//!
//! Expressions use `+ - * / ^` and parentheses; `/` only divides by
//! constants. Coefficients are integers, decimals or (via `/`) fractions.
//! Without a header the variables are `x0, x1, ...` and the arity is one
//! more than the largest index used. A header `vars x, y;` names the
//! variables explicitly and fixes the arity.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec::Vec;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::monomial::Exponent;
use crate::scalar::Scalar;

use super::MultiPoly;

/// Largest arity accepted for unnamed `x<i>` variables.
const MAX_INDEXED: usize = 64;

impl MultiPoly {
    /// Parses `src` with the given variable names, in order.
    pub fn parse_with(src: &str, names: &[&str]) -> Result<MultiPoly> {
        let owned: Vec<String> = names.iter().map(|&n| n.to_owned()).collect();
        Parser::new(src, 0, Vars::Named(&owned)).parse_all()
    }
}

impl FromStr for MultiPoly {
    type Err = Error;

    fn from_str(src: &str) -> Result<Self> {
        let (names, body, offset) = split_header(src)?;
        match names {
            Some(names) => Parser::new(body, offset, Vars::Named(&names)).parse_all(),
            None => {
                let p = Parser::new(body, offset, Vars::Indexed).parse_all()?;
                let used = p
                    .terms()
                    .flat_map(|(e, _)| e.entries().iter().enumerate().filter(|(_, &k)| k > 0))
                    .map(|(i, _)| i + 1)
                    .max()
                    .unwrap_or(0);
                shrink(&p, used)
            }
        }
    }
}

fn shrink(p: &MultiPoly, arity: usize) -> Result<MultiPoly> {
    MultiPoly::from_terms(
        arity,
        p.terms()
            .map(|(e, c)| (Exponent::new(e.entries()[..arity].to_vec()), c.clone())),
    )
}

/// Splits an optional `vars a, b, c;` header from the body.
pub(crate) fn split_header(src: &str) -> Result<(Option<Vec<String>>, &str, usize)> {
    let trimmed = src.trim_start();
    let lead = src.len() - trimmed.len();
    let Some(rest) = trimmed.strip_prefix("vars") else {
        return Ok((None, src, 0));
    };
    if !rest.starts_with(|c: char| c.is_whitespace()) {
        return Ok((None, src, 0));
    }
    let Some(semi) = rest.find(';') else {
        return Err(Error::Parse {
            pos: lead,
            msg: "header missing ';'".into(),
        });
    };
    let mut names = Vec::new();
    for name in rest[..semi].split(',') {
        let name = name.trim();
        let valid = name.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid || names.iter().any(|n| n == name) {
            return Err(Error::Parse {
                pos: lead,
                msg: alloc::format!("bad variable name '{name}'"),
            });
        }
        names.push(name.to_owned());
    }
    let offset = lead + 4 + semi + 1;
    Ok((Some(names), &src[offset..], offset))
}

enum Vars<'a> {
    Named(&'a [String]),
    Indexed,
}

impl Vars<'_> {
    fn arity(&self) -> usize {
        match self {
            Vars::Named(n) => n.len(),
            Vars::Indexed => MAX_INDEXED,
        }
    }

    fn resolve(&self, ident: &str) -> Option<usize> {
        match self {
            Vars::Named(names) => names.iter().position(|n| n == ident),
            Vars::Indexed => {
                let digits = ident.strip_prefix('x')?;
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return None;
                }
                if digits.len() > 1 && digits.starts_with('0') {
                    return None;
                }
                digits.parse().ok().filter(|&i| i < MAX_INDEXED)
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    offset: usize,
    vars: Vars<'a>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, offset: usize, vars: Vars<'a>) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            offset,
            vars,
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.offset + self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse_all(mut self) -> Result<MultiPoly> {
        if self.peek().is_none() {
            return Err(self.error("empty input"));
        }
        let p = self.expr()?;
        match self.peek() {
            None => Ok(p),
            Some(_) => Err(self.error("unexpected character")),
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.unary()?;
                    if !d.is_constant() {
                        return Err(Error::Parse {
                            pos: self.offset + at,
                            msg: "division by a non-constant".into(),
                        });
                    }
                    let inv =
                        d.coeff(&Exponent::zero(d.arity()))
                            .inv()
                            .map_err(|_| Error::Parse {
                                pos: self.offset + at,
                                msg: "division by zero".into(),
                            })?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let exp: u32 = digits.parse().map_err(|_| {
            self.pos = start;
            self.error("expected a non-negative integer exponent")
        })?;
        Ok(base.pow(exp))
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let arity = self.vars.arity();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() || b == b'.' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.')
                {
                    self.pos += 1;
                }
                let text = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let c: Scalar = text.parse().map_err(|_| {
                    self.pos = start;
                    self.error("malformed number")
                })?;
                Ok(MultiPoly::constant(arity, c))
            }
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let ident = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.vars.resolve(ident) {
                    Some(i) => Ok(MultiPoly::var(arity, i)),
                    None => {
                        self.pos = start;
                        Err(self.error("unknown variable"))
                    }
                }
            }
            Some(_) => Err(self.error("expected a number, variable or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn indexed_variables() {
        let p: MultiPoly = "x1 - x0^2".parse().unwrap();
        assert_eq!(p.arity(), 2);
        assert_eq!(p.to_string(), "-x0^2 + x1");
        let q: MultiPoly = "(x0 + 1)*(x0 - 1) / 2".parse().unwrap();
        assert_eq!(q.to_string(), "1/2*x0^2 - 1/2");
        let c: MultiPoly = "5".parse().unwrap();
        assert_eq!(c.arity(), 0);
    }

    #[test]
    fn named_header() {
        let p: MultiPoly = "vars x, y; y^2 - x^3 - 1".parse().unwrap();
        assert_eq!(p.arity(), 2);
        assert_eq!(
            p,
            MultiPoly::parse_with("y^2 - x^3 - 1", &["x", "y"]).unwrap()
        );
        assert_eq!(p.to_string(), "-x0^3 + x1^2 - 1");
    }

    #[test]
    fn round_trip() {
        for s in ["-x0^3 + 2/3*x0*x2 - x1 + 7", "x0*x1^2*x2 - 1/5", "x0"] {
            let p: MultiPoly = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
    }

    #[test]
    fn errors_carry_positions() {
        let err = "x0 + * x1".parse::<MultiPoly>().unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 5, .. }), "{err:?}");
        let err = "vars x, y; x + z".parse::<MultiPoly>().unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 15, .. }), "{err:?}");
        let err = "x0 / x1".parse::<MultiPoly>().unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 5, .. }), "{err:?}");
        assert!("x0^-1".parse::<MultiPoly>().is_err());
        assert!("(x0".parse::<MultiPoly>().is_err());
    }
}
