//! String syntax for field elements.
//!
//! Laurent elements print as `2*X^-1 + 1 + X^3`, with residue coefficients
//! written as `w`-polynomials such as `(1+w)*X^2` when `f > 1`. p-adic
//! elements print as decimal integers or `num/den` with a `p`-power
//! denominator. Approximate elements carry a trailing `O(X^N)` / `O(p^N)`.
//!
//! The parser accepts the printed forms plus arbitrary `+ - * / ^` expressions
//! over numbers, `X`, `w` and parentheses.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::descriptor::{FieldDescriptor, FieldKind};
use super::element::{pow_p, FieldElement};
use crate::error::{Error, Result};

fn residue_to_string(desc: &FieldDescriptor, c: u32) -> (String, bool) {
    if desc.f() == 1 {
        return (c.to_string(), false);
    }
    let coords = desc.res_coordinates(c);
    let mut terms = Vec::new();
    for (i, &a) in coords.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let t = match (i, a) {
            (0, _) => a.to_string(),
            (1, 1) => "w".to_string(),
            (1, _) => format!("{a}*w"),
            (_, 1) => format!("w^{i}"),
            _ => format!("{a}*w^{i}"),
        };
        terms.push(t);
    }
    let compound = terms.len() > 1;
    (terms.join("+"), compound)
}

fn fmt_laurent(x: &FieldElement, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let desc = x.descriptor();
    let mut terms = Vec::new();
    if let Some((val, digits)) = x.laurent_digits() {
        for (i, &c) in digits.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = val + i as i64;
            let (coef, compound) = residue_to_string(desc, c);
            let coef = if compound { format!("({coef})") } else { coef };
            let mono = match e {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{e}"),
            };
            terms.push(match (mono.is_empty(), c == 1) {
                (true, _) => coef,
                (false, true) => mono,
                (false, false) => format!("{coef}*{mono}"),
            });
        }
    }
    if let Some(n) = x.precision() {
        terms.push(if n == 1 {
            "O(X)".to_string()
        } else {
            format!("O(X^{n})")
        });
    }
    if terms.is_empty() {
        return out.write_str("0");
    }
    out.write_str(&terms.join(" + "))
}

fn fmt_padic(x: &FieldElement, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let p = x.descriptor().p();
    let mut s = String::new();
    if let Some(v) = x.valuation() {
        let u = x.padic_unit().unwrap();
        if v >= 0 {
            s = (u * pow_p(p, v)).to_string();
        } else {
            s = format!("{}/{}", u, pow_p(p, -v));
        }
    }
    if let Some(n) = x.precision() {
        let o = format!("O({p}^{n})");
        s = if s.is_empty() { o } else { format!("{s} + {o}") };
    }
    if s.is_empty() {
        s = "0".to_string();
    }
    out.write_str(&s)
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.descriptor().kind() {
            FieldKind::Padic => fmt_padic(self, f),
            FieldKind::Laurent => fmt_laurent(self, f),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    X,
    W,
    Big0,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(s[start..i].parse().unwrap())));
                continue;
            }
            'X' | 'x' => Tok::X,
            'w' => Tok::W,
            'O' => Tok::Big0,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character {c:?}"),
                })
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    desc: FieldDescriptor,
    toks: &'a [(usize, Tok)],
    pos: usize,
    len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.len)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {t:?}"))
        }
    }

    fn wrap(&self, r: Result<FieldElement>) -> Result<FieldElement> {
        r.map_err(|e| match e {
            Error::Parse { .. } => e,
            other => Error::Parse {
                pos: self.offset(),
                msg: other.to_string(),
            },
        })
    }

    fn expr(&mut self) -> Result<FieldElement> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FieldElement> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let t = self.unary()?;
                    acc = &acc * &t;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let t = self.unary()?;
                    acc = self.wrap(acc.checked_div(&t))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<FieldElement> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let n: i64 = match i64::try_from(n) {
                    Ok(v) => v,
                    Err(_) => return self.err("exponent out of range"),
                };
                Ok(if neg { -n } else { n })
            }
            _ => self.err("expected integer exponent"),
        }
    }

    fn power(&mut self) -> Result<FieldElement> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let e = self.signed_int()?;
            return self.wrap(base.pow_i64(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<FieldElement> {
        let desc = self.desc;
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(FieldElement::from_bigint(desc, n))
            }
            Some(Tok::X) => {
                if desc.kind() != FieldKind::Laurent {
                    return self.err("X is only available in Laurent fields");
                }
                self.pos += 1;
                Ok(FieldElement::uniformizer(desc))
            }
            Some(Tok::W) => {
                if desc.kind() != FieldKind::Laurent || desc.f() == 1 {
                    return self.err("w requires a Laurent field with f > 1");
                }
                self.pos += 1;
                Ok(FieldElement::residue_generator(desc))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::Big0) => {
                self.pos += 1;
                self.expect(Tok::LParen)?;
                match (desc.kind(), self.peek().cloned()) {
                    (FieldKind::Laurent, Some(Tok::X)) => self.pos += 1,
                    (FieldKind::Padic, Some(Tok::Num(n))) if n == BigInt::from(desc.p()) => {
                        self.pos += 1
                    }
                    _ => return self.err("O(...) must contain the uniformizer"),
                }
                let n = if self.peek() == Some(&Tok::Caret) {
                    self.pos += 1;
                    self.signed_int()?
                } else {
                    1
                };
                self.expect(Tok::RParen)?;
                Ok(FieldElement::zero_class(desc, n))
            }
            _ => self.err("expected a number, X, w, O(...) or '('"),
        }
    }
}

impl FieldElement {
    /// Parse the string syntax described in the module docs.
    pub fn parse(desc: FieldDescriptor, s: &str) -> Result<Self> {
        let toks = tokenize(s)?;
        if toks.is_empty() {
            return Err(Error::Parse {
                pos: 0,
                msg: "empty element".into(),
            });
        }
        let mut p = Parser {
            desc,
            toks: &toks,
            pos: 0,
            len: s.len(),
        };
        let e = p.expr()?;
        if p.pos != toks.len() {
            return p.err("trailing input");
        }
        Ok(e)
    }
}

/// Reads an integer-valued exact p-adic element back as a BigInt, if it is one.
pub fn padic_integer_value(x: &FieldElement) -> Option<BigInt> {
    if !x.is_exact() || x.descriptor().kind() != FieldKind::Padic {
        return None;
    }
    match x.valuation() {
        None => Some(BigInt::zero()),
        Some(v) if v >= 0 => Some(x.padic_unit().unwrap() * pow_p(x.descriptor().p(), v)),
        _ => None,
    }
}

/// True when the exact p-adic element is a negative rational.
pub fn padic_is_negative(x: &FieldElement) -> bool {
    x.is_exact() && x.padic_unit().is_some_and(|u| u.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_syntax() {
        let d = FieldDescriptor::laurent(3, 1).unwrap();
        let x = FieldElement::parse(d, "2*X^-1 + 1 + X^3").unwrap();
        assert_eq!(x.valuation(), Some(-1));
        assert_eq!(x.to_string(), "2*X^-1 + 1 + X^3");
        assert_eq!(FieldElement::zero(d).to_string(), "0");
        let y = FieldElement::parse(d, "1 + X + O(X^5)").unwrap();
        assert_eq!(y.precision(), Some(5));
        assert_eq!(y.to_string(), "1 + X + O(X^5)");
        assert_eq!(FieldElement::parse(d, "O(X^3)").unwrap().to_string(), "O(X^3)");
        // coefficients reduce mod p
        assert_eq!(FieldElement::parse(d, "4*X").unwrap().to_string(), "X");
    }

    #[test]
    fn w_coefficients() {
        let d = FieldDescriptor::laurent(3, 2).unwrap();
        let x = FieldElement::parse(d, "(1+w)*X^2 + w + 2*w*X").unwrap();
        assert_eq!(x.to_string(), "w + 2*w*X + (1+w)*X^2");
        let back = FieldElement::parse(d, &x.to_string()).unwrap();
        assert!(back.is_equal(&x));
        assert!(FieldElement::parse(FieldDescriptor::laurent(3, 1).unwrap(), "w").is_err());
    }

    #[test]
    fn padic_syntax() {
        let d = FieldDescriptor::padic(5).unwrap();
        let x = FieldElement::parse(d, "-12").unwrap();
        assert_eq!(x.to_string(), "-12");
        let y = FieldElement::parse(d, "3/25").unwrap();
        assert_eq!(y.to_string(), "3/25");
        let z = FieldElement::parse(d, "5/3").unwrap();
        assert!(!z.is_exact());
        let s = z.to_string();
        assert!(s.ends_with("+ O(5^65)"), "{s}");
        let back = FieldElement::parse(d, &s).unwrap();
        assert!(back.is_equal(&z));
        assert_eq!(back.precision(), z.precision());
    }

    #[test]
    fn parse_errors_carry_positions() {
        let d = FieldDescriptor::laurent(3, 1).unwrap();
        match FieldElement::parse(d, "1 + $") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        match FieldElement::parse(d, "1 + ") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(FieldElement::parse(d, "1/0").is_err());
        assert!(FieldElement::parse(FieldDescriptor::padic(5).unwrap(), "X").is_err());
    }
}
