//! Polynomial text format: integers, identifiers, `*`, `^`, `+`, `-`.

use std::sync::Arc;

use super::{Monomial, Polynomial, Ring, Term};
use crate::error::{Error, Result};

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn number(&mut self, p: u32) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        let mut v: u64 = 0;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            v = (v * 10 + (self.s[self.pos] - b'0') as u64) % p as u64;
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        Ok(v as u32)
    }

    fn small_number(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        let mut v: u64 = 0;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            v = v * 10 + (self.s[self.pos] - b'0') as u64;
            if v > u32::MAX as u64 {
                return self.err("exponent too large");
            }
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected exponent");
        }
        Ok(v as u32)
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len()
            && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("")
    }
}

pub fn parse(ring: &Arc<Ring>, s: &str) -> Result<Polynomial> {
    let f = ring.field();
    let mut lx = Lexer {
        s: s.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let mut sign = 1u32;
        match lx.peek() {
            None if first => return lx.err("empty polynomial"),
            None => break,
            Some(b'+') if !first => lx.pos += 1,
            Some(b'-') => {
                lx.pos += 1;
                sign = f.p() - 1;
            }
            Some(_) if first => {}
            Some(c) => return lx.err(format!("unexpected `{}`", c as char)),
        }
        first = false;
        // term := factor ('*' factor)*
        let mut coeff = sign;
        let mut exps = vec![0u32; ring.nvars()];
        loop {
            match lx.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let v = lx.number(f.p())?;
                    coeff = f.mul(coeff, v);
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let at = lx.pos;
                    let name = lx.ident();
                    let v = match ring.var_index(name) {
                        Some(v) => v,
                        None => {
                            return Err(Error::Parse {
                                pos: at,
                                msg: format!("unknown variable `{}`", name),
                            })
                        }
                    };
                    let mut e = 1;
                    if lx.peek() == Some(b'^') {
                        lx.pos += 1;
                        e = lx.small_number()?;
                    }
                    exps[v] = exps[v].checked_add(e).ok_or(Error::ExponentOverflow)?;
                }
                _ => return lx.err("expected coefficient or variable"),
            }
            if lx.peek() == Some(b'*') {
                lx.pos += 1;
            } else {
                break;
            }
        }
        let m = Monomial::from_exponents(&exps)?;
        terms.push(Term { c: coeff, m });
    }
    Ok(Polynomial::from_terms(ring, terms))
}

pub fn print(p: &Polynomial) -> String {
    let ring = p.ring();
    let f = ring.field();
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, t) in p.terms().iter().enumerate() {
        let c = f.to_signed(t.c);
        let neg = c < 0;
        let a = c.unsigned_abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = monomial_string(ring, &t.m);
        if mono.is_empty() {
            out.push_str(&a.to_string());
        } else {
            if a != 1 {
                out.push_str(&a.to_string());
                out.push('*');
            }
            out.push_str(&mono);
        }
    }
    out
}

pub fn monomial_string(ring: &Ring, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (v, e) in m.support() {
        if e == 1 {
            parts.push(ring.names()[v].clone());
        } else {
            parts.push(format!("{}^{}", ring.names()[v], e));
        }
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::TermOrder;

    #[test]
    fn parse_and_print() {
        let r = Ring::new(
            vec!["x".into(), "y".into(), "z".into()],
            32003,
            TermOrder::DegRevLex,
        )
        .unwrap();
        let p = Polynomial::parse(&r, " 3*x^2*y - y*z + 5 - 2 * z^3").unwrap();
        assert_eq!(p.to_string(), "3*x^2*y - 2*z^3 - y*z + 5");
        assert_eq!(Polynomial::parse(&r, &p.to_string()).unwrap(), p);
        assert_eq!(Polynomial::parse(&r, "-x + x").unwrap().to_string(), "0");
        assert_eq!(Polynomial::parse(&r, "x*x").unwrap().to_string(), "x^2");
    }

    #[test]
    fn parse_errors() {
        let r = Ring::standard(2, 32003).unwrap();
        assert!(Polynomial::parse(&r, "").is_err());
        assert!(Polynomial::parse(&r, "x0 +").is_err());
        assert!(Polynomial::parse(&r, "y").is_err());
        assert!(Polynomial::parse(&r, "x0 x1").is_err());
        assert!(Polynomial::parse(&r, "x0^200").is_err());
    }
}
