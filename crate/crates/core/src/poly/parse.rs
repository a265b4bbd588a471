//! Text syntax for polynomials: `3*U0^2 - U1*U2*U3*U4`, `1/2*x + (y - 1)^3`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::Field;
use super::polynomial::{Poly, PolyRing};
use crate::error::{Error, Result};

/// Parses a polynomial in the variables of `ring`.
pub fn parse_polynomial<F: Field>(ring: &PolyRing<F>, text: &str) -> Result<Poly<F>> {
    parse_polynomial_at(ring, text, 1, 1)
}

/// As [`parse_polynomial`], reporting error positions relative to the given
/// starting line and column.
pub fn parse_polynomial_at<F: Field>(ring: &PolyRing<F>, text: &str, line: usize, column: usize) -> Result<Poly<F>> {
    let mut p = Parser {
        ring,
        chars: text.chars().collect(),
        pos: 0,
        line,
        column,
    };
    p.skip_space();
    if p.at_end() {
        return Err(p.error("empty polynomial"));
    }
    let f = p.expr()?;
    p.skip_space();
    if !p.at_end() {
        return Err(p.error(&format!("unexpected '{}'", p.chars[p.pos])));
    }
    Ok(f)
}

struct Parser<'a, F: Field> {
    ring: &'a PolyRing<F>,
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

impl<F: Field> Parser<'_, F> {
    fn error(&self, message: &str) -> Error {
        let mut line = self.line;
        let mut column = self.column;
        for &c in &self.chars[..self.pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        Error::Parse {
            line,
            column,
            message: message.to_string(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_space(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_space();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly<F>> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let first = self.term()?;
        let mut acc = if negate { self.ring.neg(&first) } else { first };
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = self.ring.add(&acc, &t);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = self.ring.sub(&acc, &t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly<F>> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let f = self.factor()?;
            acc = self.ring.mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly<F>> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_space();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected an exponent"));
            }
            let e: u64 = digits.parse().map_err(|_| {
                self.pos = start;
                self.error("exponent too large")
            })?;
            return Ok(self.ring.pow(&base, e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<Poly<F>> {
        self.skip_space();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let num: BigInt = self.digits().parse().expect("digits");
                let mut q = BigRational::from_integer(num);
                if self.eat('/') {
                    self.skip_space();
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(self.error("expected a denominator"));
                    }
                    let den: BigInt = d.parse().expect("digits");
                    if den == BigInt::from(0) {
                        self.pos = start;
                        return Err(self.error("zero denominator"));
                    }
                    q /= BigRational::from_integer(den);
                }
                let c = self.ring.field().from_rational(&q).map_err(|e| {
                    self.pos = start;
                    self.error(&e.to_string())
                })?;
                Ok(self.ring.constant(c))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.ring.names().iter().position(|n| *n == name) {
                    Some(i) => Ok(self.ring.variable(i)),
                    None => {
                        self.pos = start;
                        Err(self.error(&format!("unknown variable '{name}'")))
                    }
                }
            }
            Some(c) => Err(self.error(&format!("unexpected '{c}'"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
