//! Expression grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | name | 'X' | '(' expr ')'
//! ideal  := '(' expr (',' expr)* ')' ('/' atom)?
//! ```
//!
//! `X` is the outer indeterminate; other names are the ring's coordinate
//! generators. Division is exact division (always possible by a nonzero
//! homogeneous divisor, which yields an element of `R_H`).

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ring::{Coef, GradedElement, HQuotientElement, PolyX, RingRef};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((st, Tok::Int(s[st..i].parse().unwrap())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((st, Tok::Name(s[st..i].to_string())));
        } else if "+-*/^(),".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Syntax { column: i, message: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ring: &'a RingRef,
}

impl<'a> Parser<'a> {
    fn new(s: &str, ring: &'a RingRef) -> Result<Self> {
        Ok(Parser { toks: tokenize(s)?, pos: 0, end: s.len(), ring })
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { column: self.column(), message: message.into() })
    }

    fn peek_sym(&self, c: char) -> bool {
        matches!(self.toks.get(self.pos), Some((_, Tok::Sym(x))) if *x == c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek_sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn expr(&mut self) -> Result<PolyX> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<PolyX> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.peek_sym('/') {
                let col = self.column();
                self.pos += 1;
                let d = self.unary()?;
                acc = self.divide(&acc, &d, col)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn divide(&self, a: &PolyX, d: &PolyX, col: usize) -> Result<PolyX> {
        if d.is_zero() {
            return Err(Error::Syntax { column: col, message: "division by zero".into() });
        }
        a.exact_div(d)
            .ok_or_else(|| Error::Syntax { column: col, message: "division is not exact".into() })
    }

    fn unary(&mut self) -> Result<PolyX> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<PolyX> {
        let col = self.column();
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let e = match self.toks.get(self.pos) {
            Some((_, Tok::Int(n))) => n.clone(),
            _ => return self.err("expected integer exponent"),
        };
        self.pos += 1;
        let e: u32 = e
            .try_into()
            .map_err(|_| Error::Syntax { column: col, message: "exponent too large".into() })?;
        let mut acc = PolyX::one(self.ring);
        for _ in 0..e {
            acc = acc.mul(&base);
        }
        if neg {
            acc = self.divide(&PolyX::one(self.ring), &acc, col)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<PolyX> {
        let Some((_, tok)) = self.toks.get(self.pos).cloned() else {
            return self.err("unexpected end of input");
        };
        match tok {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(PolyX::constant(GradedElement::constant(self.ring, Coef::from_integer(n))))
            }
            Tok::Name(name) => {
                self.pos += 1;
                if name == "X" {
                    return Ok(PolyX::x_pow(self.ring, 1));
                }
                let i = self
                    .ring
                    .names()
                    .iter()
                    .position(|n| *n == name)
                    .ok_or(Error::UnknownName(name))?;
                Ok(PolyX::constant(GradedElement::coordinate(self.ring, i)))
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym(c) => self.err(format!("unexpected `{c}`")),
        }
    }

    fn finish(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.err("trailing input")
        }
    }
}

/// Parses an `R_H[X]`-valued expression without checking ring membership.
pub fn parse_value(s: &str, ring: &RingRef) -> Result<PolyX> {
    let mut p = Parser::new(s, ring)?;
    let v = p.expr()?;
    p.finish()?;
    Ok(v)
}

/// Parses an element of `R[X]`.
pub fn parse_polyx(s: &str, ring: &RingRef) -> Result<PolyX> {
    let v = parse_value(s, ring)?;
    for c in v.coeffs() {
        c.check_in_ring()?;
    }
    Ok(v)
}

/// Parses an `R_H[X]` element (coefficients may have homogeneous denominators).
pub fn parse_polyx_h(s: &str, ring: &RingRef) -> Result<PolyX> {
    let v = parse_value(s, ring)?;
    for c in v.coeffs() {
        check_in_rh(c)?;
    }
    Ok(v)
}

fn check_in_rh(c: &GradedElement) -> Result<()> {
    for d in c.terms().keys() {
        if !c.ring().monoid().group_contains(d) {
            return Err(Error::DegreeOutsideMonoid(d.to_string()));
        }
    }
    Ok(())
}

fn constant_part(v: PolyX, s: &str) -> Result<GradedElement> {
    if v.degree().unwrap_or(0) > 0 {
        return Err(Error::Invalid(format!("`{s}` involves X but an element of R was expected")));
    }
    Ok(v.coeff(0))
}

/// Parses an element of R.
pub fn parse_element(s: &str, ring: &RingRef) -> Result<GradedElement> {
    let e = constant_part(parse_value(s, ring)?, s)?;
    e.check_in_ring()?;
    Ok(e)
}

/// Parses an element of `R_H`.
pub fn parse_quotient(s: &str, ring: &RingRef) -> Result<HQuotientElement> {
    let e = constant_part(parse_value(s, ring)?, s)?;
    check_in_rh(&e)?;
    Ok(HQuotientElement::from_value(&e))
}

/// Parses an ideal literal into its generators (elements of R) and
/// denominator.
pub fn parse_ideal_parts(s: &str, ring: &RingRef) -> Result<(Vec<GradedElement>, GradedElement)> {
    let mut p = Parser::new(s, ring)?;
    p.expect('(')?;
    let mut gens = Vec::new();
    loop {
        let col = p.column();
        let g = constant_part(p.expr()?, s)?;
        g.check_in_ring().map_err(|e| Error::Syntax { column: col, message: e.to_string() })?;
        gens.push(g);
        if p.eat(')') {
            break;
        }
        p.expect(',')?;
    }
    let den = if p.eat('/') {
        let col = p.column();
        let d = constant_part(p.power()?, s)?;
        if d.is_zero() {
            return Err(Error::Syntax { column: col, message: "zero denominator".into() });
        }
        d.check_in_ring().map_err(|e| Error::Syntax { column: col, message: e.to_string() })?;
        d
    } else {
        GradedElement::one(ring)
    };
    p.finish()?;
    Ok((gens, den))
}

/// Parses a rational literal such as `3`, `-2`, or `3/2`.
pub fn parse_rational(s: &str) -> Result<Coef> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| Error::Invalid(format!("bad rational `{s}`")))?;
    let d: BigInt = d.parse().map_err(|_| Error::Invalid(format!("bad rational `{s}`")))?;
    if d.is_zero() {
        return Err(Error::Zero("denominator"));
    }
    Ok(Coef::new(n, d))
}
