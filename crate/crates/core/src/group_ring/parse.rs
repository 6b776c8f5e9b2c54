//! Recursive-descent parser for the polynomial text grammar:
//!
//! ```text
//! poly   := term (("+"|"-") term)* ;
//! term   := coeff ("*" factor)* | factor ("*" factor)* ;
//! factor := name ("^" int)? | "(" poly ")" ;
//! coeff  := int | int "/" int ;
//! int    := "-"? digit+ ;
//! ```
//!
//! A poly may additionally open with a sign (`-(s+t)`). Positions in errors
//! are byte offsets into the input.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Exponent, LaurentPoly, MonomialUnit, Rational, RationalFunction};
use crate::error::{Error, Result};

pub fn parse_poly<S: AsRef<str>>(text: &str, variables: &[S]) -> Result<LaurentPoly> {
    let mut p = Parser::new(text, variables);
    let poly = p.poly()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

/// Parses `<poly>` or `<poly>/<poly>`, splitting at the last top-level `/`
/// when the whole text is not a polynomial.
pub fn parse_ratfun<S: AsRef<str>>(text: &str, variables: &[S]) -> Result<RationalFunction> {
    let whole_err = match parse_poly(text, variables) {
        Ok(p) => return Ok(RationalFunction::from_poly(p)),
        Err(e) => e,
    };
    let mut depth = 0i32;
    let mut split = None;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => split = Some(i),
            _ => {}
        }
    }
    let Some(i) = split else { return Err(whole_err) };
    let num = parse_poly(&text[..i], variables)?;
    let den = parse_poly(&text[i + 1..], variables).map_err(|e| shift_error(e, i + 1))?;
    RationalFunction::new(num, den)
}

/// Parses a signed monomial such as `u^2`, `-s*t^-1` or `1`.
pub fn parse_monomial_unit<S: AsRef<str>>(text: &str, variables: &[S]) -> Result<MonomialUnit> {
    let p = parse_poly(text, variables)?;
    match p.as_monomial() {
        Some((c, e)) if c.is_one() => Ok(MonomialUnit::new(false, e)),
        Some((c, e)) if (-c.clone()).is_one() => Ok(MonomialUnit::new(true, e)),
        _ => Err(Error::Syntax { position: 0, message: format!("`{text}` is not a signed monomial") }),
    }
}

fn shift_error(e: Error, by: usize) -> Error {
    match e {
        Error::Syntax { position, message } => Error::Syntax { position: position + by, message },
        Error::UnknownVariable { name, position } => Error::UnknownVariable { name, position: position + by },
        other => other,
    }
}

struct Parser<'a, S> {
    src: &'a [u8],
    text: &'a str,
    pos: usize,
    vars: &'a [S],
}

impl<'a, S: AsRef<str>> Parser<'a, S> {
    fn new(text: &'a str, vars: &'a [S]) -> Self {
        Parser { src: text.as_bytes(), text, pos: 0, vars }
    }

    fn rank(&self) -> usize {
        self.vars.len()
    }

    fn error(&self, message: &str) -> Error {
        Error::Syntax { position: self.pos, message: message.to_string() }
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn poly(&mut self) -> Result<LaurentPoly> {
        let mut negate = false;
        if self.peek() == Some(b'+') {
            self.pos += 1;
        } else if self.peek() == Some(b'-') && !self.next_is_digit_after_sign() {
            self.pos += 1;
            negate = true;
        }
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
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

    /// True when the `-` at the cursor starts a signed integer literal.
    fn next_is_digit_after_sign(&self) -> bool {
        let mut i = self.pos + 1;
        while i < self.src.len() && self.src[i].is_ascii_whitespace() {
            i += 1;
        }
        i < self.src.len() && self.src[i].is_ascii_digit()
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = match self.peek() {
            Some(c) if c.is_ascii_digit() || c == b'-' => LaurentPoly::constant(self.rank(), self.coeff()?),
            _ => self.factor()?,
        };
        while self.eat(b'*') {
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn coeff(&mut self) -> Result<Rational> {
        let num = self.int()?;
        if self.eat(b'/') {
            let at = self.pos;
            let den = self.int()?;
            if den.is_zero() {
                return Err(Error::Syntax { position: at, message: "zero denominator".into() });
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }

    fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
            self.skip_ws();
        }
        let digits_start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits_start == self.pos {
            self.pos = start;
            return Err(self.error("expected integer"));
        }
        let mut value: BigInt = self.text[digits_start..self.pos].parse().unwrap();
        if self.src[start] == b'-' {
            value = -value;
        }
        Ok(value)
    }

    fn small_int(&mut self) -> Result<i64> {
        let at = self.pos;
        let v = self.int()?;
        i64::try_from(v).map_err(|_| Error::Syntax { position: at, message: "exponent out of range".into() })
    }

    fn factor(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.poly()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                // Accepted beyond the grammar: a non-negative power of a group.
                if self.eat(b'^') {
                    let at = self.pos;
                    let k = self.small_int()?;
                    let k = u32::try_from(k).map_err(|_| Error::Syntax {
                        position: at,
                        message: "negative power of a parenthesized polynomial".into(),
                    })?;
                    return Ok(inner.pow(k));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = &self.text[start..self.pos];
                let index = self
                    .vars
                    .iter()
                    .position(|v| v.as_ref() == name)
                    .ok_or_else(|| Error::UnknownVariable { name: name.to_string(), position: start })?;
                let k = if self.eat(b'^') { self.small_int()? } else { 1 };
                Ok(LaurentPoly::monomial(Rational::one(), Exponent::basis(self.rank(), index, k)))
            }
            Some(_) => Err(self.error("expected variable, number or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
