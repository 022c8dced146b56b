//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | variable | '(' expr ')'
//! ```
//!
//! Division is only accepted by a nonzero constant, which lets rendered
//! rational coefficients such as `1/2*x` parse back.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::Ring;

const MAX_EXPONENT: u32 = 4096;

pub fn parse_poly(text: &str, ring: &Ring) -> Result<Poly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        let msg = if p.src[p.pos] == b')' {
            "unbalanced parentheses: unexpected `)`".to_string()
        } else {
            format!("unexpected `{}`", p.src[p.pos] as char)
        };
        return Err(p.err_at(p.pos, msg));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn err_at(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            offset,
            message: message.into(),
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

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            if op == b'*' {
                acc = acc.mul(&rhs);
            } else {
                if !rhs.is_constant() || rhs.is_zero() {
                    return Err(self.err_at(at, "division is only allowed by a nonzero constant"));
                }
                acc = acc.scale(&rhs.constant_term().inv());
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.take_while(|c| c.is_ascii_digit());
            if digits.is_empty() {
                return Err(self.err_at(start, "malformed exponent: expected a nonnegative integer"));
            }
            let e: u32 =
                digits.parse().ok().filter(|&e| e <= MAX_EXPONENT).ok_or_else(|| {
                    self.err_at(start, format!("malformed exponent: {digits} exceeds {MAX_EXPONENT}"))
                })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let start = match self.peek() {
            Some(_) => self.pos,
            None => return Err(self.err_at(self.src.len(), "unexpected end of input")),
        };
        let c = self.src[start];
        if c == b'(' {
            self.pos += 1;
            let inner = self.expr()?;
            if self.peek() != Some(b')') {
                return Err(self.err_at(self.pos, "unbalanced parentheses: expected `)`"));
            }
            self.pos += 1;
            return Ok(inner);
        }
        if c.is_ascii_digit() {
            let digits = self.take_while(|c| c.is_ascii_digit());
            let n: BigInt = digits.parse().expect("digits form an integer");
            return Ok(Poly::constant(self.ring, self.ring.field().from_bigint(&n)));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == b'_');
            return match self.ring.var_index(&name) {
                Some(i) => Ok(Poly::var(self.ring, i)),
                None => Err(self.err_at(start, format!("unknown variable `{name}`"))),
            };
        }
        if c == b')' {
            return Err(self.err_at(start, "unbalanced parentheses: unexpected `)`"));
        }
        Err(self.err_at(start, format!("unexpected `{}`", c as char)))
    }

    fn take_while(&mut self, pred: impl Fn(u8) -> bool) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && pred(self.src[self.pos]) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }
}
