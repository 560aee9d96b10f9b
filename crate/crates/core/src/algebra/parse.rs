//! A small expression parser for exact rational functions.
//!
//! Accepts the arithmetic expressions the curve formulas are written in,
//! e.g. `-(1/64)*((x-1)^5*(x+1)^5*(x^2-4*x-1))/(x^5*(x^2+x-1))`, with `i` as
//! the imaginary unit and a single free variable. Values are computed
//! exactly over the Gaussian rationals.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::poly::Poly;
use crate::algebra::ratfunc::RationalFunction;
use crate::algebra::scalar::{GaussRat, Rat};
use crate::algebra::AlgebraError;

type Value = RationalFunction<GaussRat>;

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
    var: Option<char>,
}

/// Parse an expression into a rational function over the Gaussian rationals.
pub fn parse_expr(s: &str) -> Result<Value, AlgebraError> {
    let mut p = Parser {
        input: s.as_bytes(),
        pos: 0,
        var: None,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.input.len() {
        return Err(p.error("trailing input"));
    }
    Ok(v)
}

/// Parse an expression that must be a polynomial with rational coefficients.
pub fn parse_poly(s: &str) -> Result<Poly<Rat>, AlgebraError> {
    let v = parse_expr(s)?;
    if !v.den_poly().is_one() {
        return Err(AlgebraError::Parse(format!("not a polynomial: {s}")));
    }
    v.num_poly().to_rational()
}

/// Parse an expression into a rational function with rational coefficients.
pub fn parse_ratfunc(s: &str) -> Result<RationalFunction<Rat>, AlgebraError> {
    let v = parse_expr(s)?;
    RationalFunction::new(v.num_poly().to_rational()?, v.den_poly().to_rational()?)
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse(format!("{msg} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expr(&mut self) -> Result<Value, AlgebraError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.bump();
                -self.term()?
            }
            Some(b'+') => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                b'-' => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Value, AlgebraError> {
        let mut acc = self.factor()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.bump();
                    acc = acc * self.factor()?;
                }
                b'/' => {
                    self.bump();
                    let rhs = self.factor()?;
                    if rhs.num_poly().is_zero() {
                        return Err(self.error("division by zero"));
                    }
                    acc = acc / rhs;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Value, AlgebraError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.bump();
            let e: usize = self
                .integer()?
                .try_into()
                .map_err(|_| self.error("exponent too large"))?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Value, AlgebraError> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let v = self.expr()?;
                if self.bump() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(v)
            }
            Some(b'-') => {
                self.bump();
                Ok(-self.atom()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RationalFunction::constant(GaussRat::from_rat(
                    Rat::from_integer(n),
                )))
            }
            Some(b'i') => {
                self.bump();
                Ok(RationalFunction::constant(GaussRat::i()))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.bump();
                let c = c as char;
                match self.var {
                    None => self.var = Some(c),
                    Some(v) if v == c => {}
                    Some(v) => {
                        return Err(self.error(&format!("mixed variables '{v}' and '{c}'")));
                    }
                }
                Ok(RationalFunction::var())
            }
            _ => Err(self.error("expected a value")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, AlgebraError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let text = std::str::from_utf8(&self.input[start..self.pos]).expect("ascii digits");
        text.parse::<BigInt>()
            .map_err(|e| AlgebraError::Parse(e.to_string()))
    }
}
