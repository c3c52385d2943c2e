//! Canonical text form.
//!
//! Polynomials print as a sum of terms in descending graded-lex order, e.g.
//! `3/8*a1^2 - a1*a2 + 1`. Rational functions print as `(num)/(den)` with an
//! expanded monic denominator, or as the bare numerator when the denominator
//! is one. The parser accepts any arithmetic expression over integers and
//! identifiers with `+ - * / ^` and parentheses, so printing then parsing is
//! the identity.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use super::poly::MultiPoly;
use super::rational::Rational;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

pub fn format_poly(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let mono = format_monomial(p.vars(), e);
        if mono.is_empty() {
            out.push_str(&super::rational::format_rational(&a));
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&super::rational::format_rational(&a));
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

fn format_monomial(vars: &[String], e: &[u32]) -> String {
    let mut parts = Vec::new();
    for (v, &k) in vars.iter().zip(e.iter()) {
        match k {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{v}^{k}")),
        }
    }
    parts.join("*")
}

pub fn format_ratfunc(r: &RatFunc) -> String {
    if r.is_polynomial() {
        return format_poly(r.num());
    }
    format!("({})/({})", format_poly(r.num()), format_poly(&r.den()))
}

pub fn parse_ratfunc(s: &str) -> Result<RatFunc> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let r = p.expr()?;
    p.ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(r)
}

pub fn parse_poly(s: &str) -> Result<MultiPoly> {
    let r = parse_ratfunc(s)?;
    match r.as_poly() {
        Some(p) => Ok(p.clone()),
        None => Err(Error::Parse {
            pos: 0,
            msg: "expression is not a polynomial".into(),
        }),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut polys: Vec<MultiPoly> = Vec::new();
        let mut rest = RatFunc::zero();
        let push = |t: RatFunc, neg: bool, polys: &mut Vec<MultiPoly>, rest: &mut RatFunc| {
            let t = if neg { -t } else { t };
            match t.as_poly() {
                Some(p) => polys.push(p.clone()),
                None => *rest = &*rest + &t,
            }
        };
        let t = self.term()?;
        push(t, false, &mut polys, &mut rest);
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    push(t, false, &mut polys, &mut rest);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    push(t, true, &mut polys, &mut rest);
                }
                _ => break,
            }
        }
        let sum = RatFunc::from_poly(MultiPoly::sum(polys.iter()));
        Ok(&sum + &rest)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.unary()?;
                    acc = &acc * &f;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let f = self.unary()?;
                    if f.is_zero() {
                        return Err(Error::Parse {
                            pos: at,
                            msg: "division by zero".into(),
                        });
                    }
                    acc = acc.checked_div(&f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
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

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let at = self.pos;
            let k = self.integer()?.to_i32().ok_or(Error::Parse {
                pos: at,
                msg: "exponent too large".into(),
            })?;
            return base.pow(if neg { -k } else { k });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(s.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(RatFunc::constant(Rational::from_integer(self.integer()?))),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(RatFunc::var(name))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
