//! Parser for rational-function literals such as `-1/(1+q)` or `q^-2 + 3`.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' '-'? integer)?
//! atom  := integer | 'q' | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::One;

use crate::exact::ExactError;
use crate::{RatFuncQ, RatQ};

const MAX_EXPONENT: i64 = 4096;

pub fn parse_ratfunc(src: &str) -> Result<RatFuncQ, ExactError> {
    let mut p = Parser {
        chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
    };
    if p.chars.is_empty() {
        return Err(ExactError::Parse("empty expression".into()));
    }
    let v = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.error("unexpected character"));
    }
    Ok(v)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, what: &str) -> ExactError {
        let s: String = self.chars.iter().collect();
        ExactError::Parse(format!("{what} at position {} in {s:?}", self.pos))
    }

    fn expr(&mut self) -> Result<RatFuncQ, ExactError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFuncQ, ExactError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.checked_div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFuncQ, ExactError> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<RatFuncQ, ExactError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let k = self.integer()?;
        let k: i64 = k
            .try_into()
            .ok()
            .filter(|k| *k <= MAX_EXPONENT)
            .ok_or_else(|| self.error("exponent too large"))?;
        base.powi(if neg { -k } else { k })
    }

    fn integer(&mut self) -> Result<BigInt, ExactError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn atom(&mut self) -> Result<RatFuncQ, ExactError> {
        match self.peek() {
            Some('q') => {
                self.pos += 1;
                Ok(RatFuncQ::q())
            }
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RatFuncQ::from_ratq(RatQ::new(n, BigInt::one())))
            }
            _ => Err(self.error("expected integer, 'q' or '('")),
        }
    }
}
