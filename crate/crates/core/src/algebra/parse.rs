//! Recursive-descent parser for forms in `x0..x3`.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'x0' | 'x1' | 'x2' | 'x3' | '(' expr ')'
//! ```
//!
//! Division is only allowed by a nonzero constant, which is how rational
//! coefficients such as `3/2*x0^2` are written.

use num_bigint::BigInt;

use super::poly::{Polynomial, NVARS};
use super::scalar::Rational;
use super::AlgebraError;

const MAX_EXPONENT: u32 = 64;

/// Parses `text`. When `expected_degree` is given the result must be zero or
/// a form of exactly that degree.
pub fn poly_parse(text: &str, expected_degree: Option<u32>) -> Result<Polynomial, AlgebraError> {
    let mut parser = Parser { src: text.as_bytes(), pos: 0 };
    parser.skip_ws();
    if parser.pos == parser.src.len() {
        return Err(parser.error("empty input"));
    }
    let p = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    if let Some(d) = expected_degree {
        if !p.is_form_of_degree(d) {
            let found = match p.homogeneous_degree() {
                Some(e) => format!("a form of degree {e}"),
                None => "an inhomogeneous polynomial".to_string(),
            };
            return Err(AlgebraError::Inhomogeneous { expected: d, found });
        }
    }
    Ok(p)
}

impl std::str::FromStr for Polynomial {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        poly_parse(s, None)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<Polynomial, AlgebraError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, AlgebraError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc * self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let divisor = self.unary()?;
                let c = divisor
                    .constant_value()
                    .ok_or(AlgebraError::Parse { pos: at, msg: "can only divide by a constant".to_string() })?;
                if c == Rational::from_integer(0.into()) {
                    return Err(AlgebraError::DivisionByZero);
                }
                acc = acc.scale(&c.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, AlgebraError> {
        if self.eat(b'-') {
            Ok(-self.unary()?)
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Polynomial, AlgebraError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 =
                e.try_into().ok().filter(|&e| e <= MAX_EXPONENT).ok_or_else(|| self.error("exponent out of range"))?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial, AlgebraError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                match self.src.get(self.pos) {
                    Some(d @ b'0'..=b'9') if ((d - b'0') as usize) < NVARS => {
                        let i = (d - b'0') as usize;
                        self.pos += 1;
                        if matches!(self.src.get(self.pos), Some(b'0'..=b'9')) {
                            return Err(self.error("unknown variable"));
                        }
                        Ok(Polynomial::var(i))
                    }
                    _ => Err(self.error("unknown variable, expected x0..x3")),
                }
            }
            Some(b'0'..=b'9') => {
                let n = self.integer()?;
                Ok(Polynomial::constant(Rational::from_integer(n)))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, AlgebraError> {
        let start = self.pos;
        while matches!(self.src.get(self.pos), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse as an integer"))
    }
}
