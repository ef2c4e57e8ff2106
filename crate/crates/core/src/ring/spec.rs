//! Text form of ring descriptors.
//!
//! ```text
//! spec := term ("x" term)*
//! term := "Z/" nat | "GF(" nat ")" | "M" nat "(" spec ")"
//!       | "triv(" spec "," nat ")" | "(" spec ")"
//! ```
//!
//! Whitespace is ignored everywhere. Error offsets are byte offsets into
//! the original text.

use std::str::FromStr;

use super::{saturating_pow, Ring};
use crate::config::DEFAULT_ORDER_CAP;
use crate::error::{Error, Result};

pub fn parse_ring_spec(text: &str) -> Result<Ring> {
    parse_ring_spec_with_cap(text, DEFAULT_ORDER_CAP)
}

pub fn parse_ring_spec_with_cap(text: &str, order_cap: u64) -> Result<Ring> {
    let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut parser = Parser {
        chars,
        end: text.len(),
        pos: 0,
        order_cap,
    };
    let ring = parser.spec()?;
    if parser.pos < parser.chars.len() {
        return Err(parser.error(&["\"x\"", "end of input"]));
    }
    Ok(ring)
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ring> {
        parse_ring_spec(s)
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    end: usize,
    pos: usize,
    order_cap: u64,
}

impl Parser {
    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end, |&(o, _)| o)
    }

    fn error(&self, expected: &[&str]) -> Error {
        Error::Parse {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn eat(&mut self, token: &str) -> bool {
        let matches = token
            .chars()
            .enumerate()
            .all(|(i, c)| self.chars.get(self.pos + i).map(|&(_, d)| d) == Some(c));
        if matches {
            self.pos += token.chars().count();
        }
        matches
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&[&format!("{token:?}")]))
        }
    }

    fn nat(&mut self) -> Result<u64> {
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = match value.checked_mul(10).and_then(|v| v.checked_add(d as u64)) {
                Some(v) => v,
                None => {
                    self.pos = start;
                    return Err(self.error(&["natural number below 2^64"]));
                }
            };
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error(&["natural number"]));
        }
        Ok(value)
    }

    fn check_order(&self, order: u128) -> Result<()> {
        if order > self.order_cap as u128 {
            Err(Error::OrderOverflow {
                order,
                cap: self.order_cap,
            })
        } else {
            Ok(())
        }
    }

    fn spec(&mut self) -> Result<Ring> {
        let mut factors = vec![self.term()?];
        while self.eat("x") {
            factors.push(self.term()?);
        }
        if factors.len() == 1 {
            return Ok(factors.pop().unwrap());
        }
        let order = factors
            .iter()
            .fold(1u128, |acc, f| acc.saturating_mul(f.order() as u128));
        self.check_order(order)?;
        Ring::product(factors)
    }

    fn term(&mut self) -> Result<Ring> {
        let start = self.pos;
        if self.eat("Z/") {
            let at = self.pos;
            let m = self.nat()?;
            if m == 0 {
                self.pos = at;
                return Err(self.error(&["positive modulus"]));
            }
            self.check_order(m as u128)?;
            return Ring::integers_mod(m);
        }
        if self.eat("GF(") {
            let q = self.nat()?;
            self.expect(")")?;
            self.check_order(q as u128)?;
            return Ring::galois_field(q);
        }
        if self.eat("triv(") {
            let base = self.spec()?;
            self.expect(",")?;
            let g = self.nat()?;
            self.expect(")")?;
            self.check_order(saturating_pow(base.order(), g.saturating_add(1)))?;
            return Ring::trivial_extension(base, g as usize);
        }
        if self.eat("M") {
            let at = self.pos;
            let n = self.nat()?;
            if n == 0 {
                self.pos = at;
                return Err(self.error(&["positive dimension"]));
            }
            self.expect("(")?;
            let base = self.spec()?;
            self.expect(")")?;
            self.check_order(saturating_pow(base.order(), n.saturating_mul(n)))?;
            return Ring::matrix_ring(base, n as usize);
        }
        if self.eat("(") {
            let inner = self.spec()?;
            if !self.eat(")") {
                return Err(self.error(&["\"x\"", "\")\""]));
            }
            return Ok(inner);
        }
        self.pos = start;
        Err(self.error(&["\"Z/\"", "\"GF(\"", "\"M\"", "\"triv(\"", "\"(\""]))
    }
}
