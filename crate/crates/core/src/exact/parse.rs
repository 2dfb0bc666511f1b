//! Parser for rational-function expressions in `n` and `k`.
//!
//! Grammar: sums and differences of products and quotients of powers, with
//! integer or `p/q` literals, parentheses, juxtaposition (`2n`, `3(k+1)`) and
//! integer exponents via `^`.

use num_bigint::BigInt;
use num_traits::One;

use super::{BiPoly, RatFunc, Rational};

type Poly2 = BiPoly<Rational>;
use crate::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Syntax { offset, message: message.into() })
}

impl<'a> Parser<'a> {
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

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(b'/') => {
                    let at = self.pos;
                    self.pos += 1;
                    let d = self.power()?;
                    acc = acc.div(&d).or_else(|_| err(at, "division by zero"))?;
                }
                Some(c) if c == b'(' || c == b'n' || c == b'k' || c.is_ascii_digit() => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let neg = self.eat(b'-');
            let at = self.pos;
            let e = self.integer()?;
            let e: i32 = e.try_into().or_else(|_| err(at, "exponent too large"))?;
            let e = if neg { -e } else { e };
            return base.pow(e).or_else(|_| err(at, "zero raised to a negative power"));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return err(start, "expected an integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return err(self.pos, "expected ')'");
                }
                Ok(e)
            }
            Some(b'n') => {
                self.pos += 1;
                Ok(RatFunc::from_poly(Poly2::n()))
            }
            Some(b'k') => {
                self.pos += 1;
                Ok(RatFunc::from_poly(Poly2::k()))
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                Ok(RatFunc::constant(Rational::from_integer(v)))
            }
            Some(c) => err(self.pos, format!("unexpected '{}'", c as char)),
            None => err(self.pos, "unexpected end of input"),
        }
    }
}

/// Parse a rational function of `n` and `k`.
pub fn parse_ratfunc(src: &str) -> Result<RatFunc> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return err(p.pos, "trailing input");
    }
    Ok(e)
}

/// Parse a polynomial in `n` and `k`.
pub fn parse_poly(src: &str) -> Result<Poly2> {
    let f = parse_ratfunc(src)?;
    if !f.is_polynomial() {
        return err(0, "expected a polynomial");
    }
    let d = f.den().constant_term();
    Ok(f.num().scale(&(Rational::one() / d)))
}

/// Parse a rational constant such as `-3/4` or `2^-12`.
pub fn parse_rational(src: &str) -> Result<Rational> {
    let f = parse_ratfunc(src)?;
    if !f.is_constant() {
        return err(0, "expected a rational constant");
    }
    Ok(f.num().constant_term() / f.den().constant_term())
}
