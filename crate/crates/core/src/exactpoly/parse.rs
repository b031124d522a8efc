//! Text form of polynomials.
//!
//! ```text
//! poly     := ['-'] term (('+'|'-') term)*
//! term     := coeff ('*' monomial)? | monomial
//! coeff    := int ('/' posint)?
//! monomial := var ('^' posint)? ('*' var ('^' posint)?)*
//! ```
//!
//! Whitespace between tokens is ignored.

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::{HomogPoly, Poly};
use super::scalar::{Domain, Scalar};
use crate::error::{Error, Result};

/// Parse a homogeneous polynomial in the given variables.
pub fn parse_poly<S: AsRef<str>>(text: &str, variables: &[S], domain: Domain) -> Result<HomogPoly> {
    HomogPoly::new(parse_any(text, variables, domain)?)
}

/// Parse without the homogeneity requirement.
pub fn parse_any<S: AsRef<str>>(text: &str, variables: &[S], domain: Domain) -> Result<Poly> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars: variables.iter().map(|s| s.as_ref()).collect(),
        domain,
    };
    let p = parser.poly()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(p)
}

/// Parse a scalar `['-'] int ('/' posint)?`.
pub fn parse_scalar(text: &str, domain: Domain) -> Result<Scalar> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars: Vec::new(),
        domain,
    };
    let negate = parser.eat(b'-');
    let c = parser.coeff()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(if negate { -c } else { c })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: Vec<&'a str>,
    domain: Domain,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.to_string(),
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

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn poly(&mut self) -> Result<Poly> {
        let nvars = self.vars.len();
        let mut acc = Poly::zero(self.domain, nvars);
        let mut negate = self.eat(b'-');
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let nvars = self.vars.len();
        match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                let c = self.coeff()?;
                if self.eat(b'*') {
                    let exps = self.monomial()?;
                    Ok(Poly::term(exps, c))
                } else {
                    Ok(Poly::constant(c, nvars))
                }
            }
            Some(b) if is_ident_start(b) => {
                let exps = self.monomial()?;
                Ok(Poly::term(exps, self.domain.one()))
            }
            Some(_) => Err(self.error("expected a coefficient or variable")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn coeff(&mut self) -> Result<Scalar> {
        let num = self.integer()?;
        let den = if self.eat(b'/') {
            let d = self.integer()?;
            if d.is_zero() {
                return Err(self.error("zero denominator"));
            }
            d
        } else {
            BigInt::from(1)
        };
        self.domain
            .from_fraction(&num, &den)
            .ok_or_else(|| self.error("denominator vanishes in the scalar domain"))
    }

    fn exponent(&mut self) -> Result<u32> {
        let e = self.integer()?;
        match u32::try_from(&e) {
            Ok(e) if e > 0 => Ok(e),
            _ => Err(self.error("exponent must be a positive 32-bit integer")),
        }
    }

    fn monomial(&mut self) -> Result<Vec<u32>> {
        let mut exps = vec![0; self.vars.len()];
        loop {
            let index = self.variable()?;
            let e = if self.eat(b'^') { self.exponent()? } else { 1 };
            exps[index] += e;
            // a '*' here must be followed by another variable
            let save = self.pos;
            if self.eat(b'*') {
                if self.peek().is_some_and(is_ident_start) {
                    continue;
                }
                self.pos = save;
                return Err(self.error("expected a variable after '*'"));
            }
            return Ok(exps);
        }
    }

    fn variable(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        if !self.src.get(self.pos).copied().is_some_and(is_ident_start) {
            return Err(self.error("expected a variable"));
        }
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        self.vars
            .iter()
            .position(|v| *v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }
}

fn is_ident_start(b: u8) -> bool {
    b.is_ascii_alphabetic() || b == b'_'
}
