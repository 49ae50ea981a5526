//! Expressions over an Ore algebra.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := '-' factor | power
//! power   := atom ('^' '-'? INT)?
//! atom    := INT ('/' INT)? | IDENT | '(' expr ')'
//! ```
//!
//! Identifiers are the carrier variable and the Ore variable. `*` is
//! noncommutative and left-associative; there is no juxtaposition. Negative
//! exponents are only allowed on the Ore variable, in inverse polynomials.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::inverse::{InvModule, InvPoly, RightModule};
use crate::ring::{Carrier, RingElement};
use crate::skew::{OreAlgebra, SkewPoly};

/// Largest exponent accepted.
const MAX_EXPONENT: i64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Ratio(BigInt, BigInt),
    Sym(String, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((Tok::Int(s.parse().expect("digits")), pos));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().map(|(_, c)| c).collect()), pos));
        } else if "+-*^()/".contains(c) {
            out.push((Tok::Op(c), pos));
            i += 1;
        } else {
            return Err(Error::Parse { pos, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let pos = self.pos();
        let negative = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.at += 1;
                let e = v.to_i64().filter(|e| *e <= MAX_EXPONENT);
                let Some(e) = e else {
                    return Err(Error::Parse { pos, msg: format!("exponent {v} is too large") });
                };
                Ok(Expr::Pow(Box::new(base), if negative { -e } else { e }, pos))
            }
            _ => self.err("expected an integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.at += 1;
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) => {
                            self.at += 1;
                            if d.is_zero() {
                                return Err(Error::Parse { pos, msg: "division by zero".into() });
                            }
                            Ok(Expr::Ratio(v, d))
                        }
                        _ => self.err("expected an integer denominator"),
                    }
                } else {
                    Ok(Expr::Int(v))
                }
            }
            Some(Tok::Ident(s)) => {
                self.at += 1;
                Ok(Expr::Sym(s, pos))
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse text into a syntax tree.
pub fn parse(text: &str) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, end: text.len() };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

fn scalar(c: &Carrier, e: &Expr) -> Result<Option<RingElement>> {
    Ok(match e {
        Expr::Int(v) => Some(c.from_bigint(v)),
        Expr::Ratio(n, d) => Some(c.from_ratio(n, d)?),
        _ => None,
    })
}

/// Evaluate to an element of the carrier; the Ore variable is rejected.
pub fn eval_ring(c: &Carrier, e: &Expr) -> Result<RingElement> {
    if let Some(s) = scalar(c, e)? {
        return Ok(s);
    }
    Ok(match e {
        Expr::Sym(s, pos) => match c.generator() {
            Some(g) if c.var() == Some(s.as_str()) => g,
            _ => return Err(Error::UnknownSymbol { symbol: s.clone(), pos: *pos }),
        },
        Expr::Neg(a) => c.neg(&eval_ring(c, a)?),
        Expr::Add(a, b) => c.add(&eval_ring(c, a)?, &eval_ring(c, b)?),
        Expr::Sub(a, b) => c.sub(&eval_ring(c, a)?, &eval_ring(c, b)?),
        Expr::Mul(a, b) => c.mul(&eval_ring(c, a)?, &eval_ring(c, b)?),
        Expr::Pow(a, k, pos) => {
            if *k < 0 {
                return Err(Error::Parse { pos: *pos, msg: "negative exponent in a ring element".into() });
            }
            c.pow(&eval_ring(c, a)?, *k as u64)
        }
        Expr::Int(_) | Expr::Ratio(..) => unreachable!("handled as scalars"),
    })
}

/// Evaluate to the normal form of an element of `A`.
pub fn eval_poly(alg: &Arc<OreAlgebra>, e: &Expr) -> Result<SkewPoly> {
    let c = alg.carrier();
    if let Some(s) = scalar(c, e)? {
        return Ok(alg.constant(s));
    }
    match e {
        Expr::Sym(s, pos) => {
            if s == alg.var() {
                Ok(alg.x())
            } else if c.var() == Some(s.as_str()) {
                Ok(alg.constant(c.generator().expect("variable carrier")))
            } else {
                Err(Error::UnknownSymbol { symbol: s.clone(), pos: *pos })
            }
        }
        Expr::Neg(a) => Ok(eval_poly(alg, a)?.neg()),
        Expr::Add(a, b) => eval_poly(alg, a)?.add(&eval_poly(alg, b)?),
        Expr::Sub(a, b) => eval_poly(alg, a)?.sub(&eval_poly(alg, b)?),
        Expr::Mul(a, b) => eval_poly(alg, a)?.mul(&eval_poly(alg, b)?),
        Expr::Pow(a, k, pos) => {
            if *k < 0 {
                return Err(Error::Parse { pos: *pos, msg: "negative exponent outside an inverse polynomial".into() });
            }
            eval_poly(alg, a)?.pow(*k as u64)
        }
        Expr::Int(_) | Expr::Ratio(..) => unreachable!("handled as scalars"),
    }
}

/// Parse and normalize an element of `A`.
pub fn parse_poly(alg: &Arc<OreAlgebra>, text: &str) -> Result<SkewPoly> {
    eval_poly(alg, &parse(text)?)
}

/// Parse an element of the carrier.
pub fn parse_ring(c: &Carrier, text: &str) -> Result<RingElement> {
    eval_ring(c, &parse(text)?)
}

fn inverse_power(alg: &OreAlgebra, e: &Expr) -> Option<usize> {
    match e {
        Expr::Sym(s, _) if s == alg.var() => Some(0),
        Expr::Pow(b, k, _) if *k <= 0 => match b.as_ref() {
            Expr::Sym(s, _) if s == alg.var() => Some(k.unsigned_abs() as usize),
            _ => None,
        },
        _ => None,
    }
}

fn mentions_var(alg: &OreAlgebra, e: &Expr) -> Option<usize> {
    match e {
        Expr::Sym(s, pos) if s == alg.var() => Some(*pos),
        Expr::Neg(a) => mentions_var(alg, a),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => mentions_var(alg, a).or_else(|| mentions_var(alg, b)),
        Expr::Pow(a, _, _) => mentions_var(alg, a),
        _ => None,
    }
}

/// Evaluate an inverse polynomial: a sum of terms `c`, `c*x^-k` or `x^-k`
/// with `c` an expression in the carrier, mapped into `M` by `coeff`.
pub fn eval_inv<M: RightModule>(
    inv: &InvModule<M>,
    e: &Expr,
    coeff: &dyn Fn(RingElement) -> M::Elem,
) -> Result<InvPoly<M::Elem>> {
    let alg = inv.algebra().clone();
    let c = alg.carrier();
    let bad = |pos: usize| Error::Parse { pos, msg: "expected a sum of terms c*x^-k".into() };
    match e {
        Expr::Add(a, b) => Ok(inv.add(&eval_inv(inv, a, coeff)?, &eval_inv(inv, b, coeff)?)),
        Expr::Sub(a, b) => Ok(inv.add(&eval_inv(inv, a, coeff)?, &inv.neg(&eval_inv(inv, b, coeff)?))),
        Expr::Neg(a) => Ok(inv.neg(&eval_inv(inv, a, coeff)?)),
        Expr::Mul(a, b) => match inverse_power(&alg, b) {
            Some(k) => {
                if let Some(pos) = mentions_var(&alg, a) {
                    return Err(bad(pos));
                }
                Ok(inv.monomial(coeff(eval_ring(c, a)?), k))
            }
            None => match mentions_var(&alg, e) {
                Some(pos) => Err(bad(pos)),
                None => Ok(inv.monomial(coeff(eval_ring(c, e)?), 0)),
            },
        },
        _ => match inverse_power(&alg, e) {
            Some(k) => Ok(inv.monomial(coeff(c.one()), k)),
            None => match mentions_var(&alg, e) {
                Some(pos) => Err(bad(pos)),
                None => Ok(inv.monomial(coeff(eval_ring(c, e)?), 0)),
            },
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inverse::RingQuotient;
    use crate::ring::{DeltaSpec, TwistedRing};

    fn quantum() -> Arc<OreAlgebra> {
        let c = Carrier::fp_poly(5, "y").unwrap();
        let t = TwistedRing::new(c, Some(RingElement::Fp(vec![0, 2])), None, DeltaSpec::Zero).unwrap();
        OreAlgebra::new(t, "x").unwrap()
    }

    #[test]
    fn normal_forms() {
        let a = quantum();
        assert_eq!(parse_poly(&a, "x*y").unwrap().to_string(), "2*y*x");
        assert_eq!(parse_poly(&a, "(x + y)^0").unwrap().to_string(), "1");
        assert_eq!(parse_poly(&a, "x*1").unwrap().to_string(), "x");
        assert_eq!(parse_poly(&a, "-(y - y)").unwrap().to_string(), "0");
        assert_eq!(parse_poly(&a, "1/2*y").unwrap(), parse_poly(&a, "3*y").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let a = quantum();
        assert!(matches!(parse_poly(&a, "x + z"), Err(Error::UnknownSymbol { pos: 4, .. })));
        assert!(matches!(parse_poly(&a, "x +"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_poly(&a, "x y"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly(&a, "x # y"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly(&a, "x^-1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(&a, "1/0"), Err(Error::Parse { .. })));
    }

    #[test]
    fn inverse_polynomials() {
        let a = quantum();
        let inv = InvModule::new(a.clone(), RingQuotient::regular(a.carrier().clone())).unwrap();
        let e = parse("1 + 3*y*x^-2 - x^-1").unwrap();
        let m = eval_inv(&inv, &e, &|r| r).unwrap();
        assert_eq!(inv.format(&m), "1 + 4*x^-1 + 3*y*x^-2");
        assert!(eval_inv(&inv, &parse("x*y").unwrap(), &|r| r).is_err());
    }
}
