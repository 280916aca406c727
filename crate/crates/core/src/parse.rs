//! Literal grammar shared by series and polynomial inputs.
//!
//! expr := term (('+'|'-') term)* ; term := factor (('*'|'/') factor)* ;
//! factor := ('-')* base ('^' ('-')? int)? ; base := int | ident | '(' expr ')'.
//! Division is only by a constant. Negative powers are only meaningful for
//! the series variable t (an exact monomial base).

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::series::{LaurentSeries, Q};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eof,
}

fn tokenize(input: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = input[start..i].parse().expect("digits");
                toks.push((start, Tok::Int(n)));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Ident(input[start..i].to_string())));
            }
            _ => {
                return Err(Error::Parse {
                    offset: i,
                    msg: format!("unexpected character '{c}'"),
                })
            }
        }
    }
    toks.push((input.len(), Tok::Eof));
    Ok(toks)
}

/// How identifiers, powers, and division land in the target ring.
trait Builder {
    type V: Clone;
    fn num(&self, c: Q) -> Self::V;
    fn var(&self, name: &str, offset: usize) -> Result<Self::V>;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn sub(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn neg(&self, a: &Self::V) -> Self::V;
    fn pow(&self, a: &Self::V, k: i64, offset: usize) -> Result<Self::V>;
    fn div(&self, a: &Self::V, b: &Self::V, offset: usize) -> Result<Self::V>;
}

struct PolyBuilder<'a> {
    vars: &'a [String],
}

impl Builder for PolyBuilder<'_> {
    type V = Poly;

    fn num(&self, c: Q) -> Poly {
        Poly::constant(self.vars.len(), c)
    }

    fn var(&self, name: &str, offset: usize) -> Result<Poly> {
        match self.vars.iter().position(|v| v == name) {
            Some(i) => Ok(Poly::var(self.vars.len(), i)),
            None => Err(Error::Parse {
                offset,
                msg: format!(
                    "unknown variable '{name}' (declared: {})",
                    self.vars.join(", ")
                ),
            }),
        }
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b)
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(b)
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b)
    }
    fn neg(&self, a: &Poly) -> Poly {
        a.neg()
    }

    fn pow(&self, a: &Poly, k: i64, offset: usize) -> Result<Poly> {
        if k < 0 {
            return Err(Error::Parse {
                offset,
                msg: "negative exponent in a polynomial".to_string(),
            });
        }
        Ok(a.pow(k as u32))
    }

    fn div(&self, a: &Poly, b: &Poly, offset: usize) -> Result<Poly> {
        let c = constant_of_poly(b).ok_or_else(|| Error::Parse {
            offset,
            msg: "division is only by a nonzero constant".to_string(),
        })?;
        Ok(a.scale(&c.recip()))
    }
}

fn constant_of_poly(p: &Poly) -> Option<Q> {
    if p.is_zero() {
        return None;
    }
    let mut it = p.terms();
    let (e, c) = it.next()?;
    if it.next().is_some() || e.iter().any(|&k| k != 0) {
        return None;
    }
    Some(c.clone())
}

struct SeriesBuilder;

impl Builder for SeriesBuilder {
    type V = LaurentSeries;

    fn num(&self, c: Q) -> LaurentSeries {
        LaurentSeries::monomial(c, 0)
    }

    fn var(&self, name: &str, offset: usize) -> Result<LaurentSeries> {
        if name == "t" {
            Ok(LaurentSeries::monomial(Q::from_integer(1.into()), 1))
        } else {
            Err(Error::Parse {
                offset,
                msg: format!("unknown variable '{name}' (series use t)"),
            })
        }
    }

    fn add(&self, a: &LaurentSeries, b: &LaurentSeries) -> LaurentSeries {
        a.add(b)
    }
    fn sub(&self, a: &LaurentSeries, b: &LaurentSeries) -> LaurentSeries {
        a.sub(b)
    }
    fn mul(&self, a: &LaurentSeries, b: &LaurentSeries) -> LaurentSeries {
        a.mul(b)
    }
    fn neg(&self, a: &LaurentSeries) -> LaurentSeries {
        a.neg()
    }

    fn pow(&self, a: &LaurentSeries, k: i64, offset: usize) -> Result<LaurentSeries> {
        if k >= 0 {
            return Ok(a.pow(k as u32));
        }
        // Negative power: only exact monomials invert without truncation.
        let inv = a.invert().map_err(|_| Error::Parse {
            offset,
            msg: "negative exponent needs a monomial base".to_string(),
        })?;
        Ok(inv.pow((-k) as u32))
    }

    fn div(&self, a: &LaurentSeries, b: &LaurentSeries, offset: usize) -> Result<LaurentSeries> {
        let inv = b.invert().map_err(|_| Error::Parse {
            offset,
            msg: "division is only by a nonzero constant or monomial".to_string(),
        })?;
        Ok(a.mul(&inv))
    }
}

struct Parser<'a, B: Builder> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    builder: &'a B,
}

impl<'a, B: Builder> Parser<'a, B> {
    fn peek(&self) -> &(usize, Tok) {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<B::V> {
        let mut acc = self.term()?;
        loop {
            match self.peek().1 {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.builder.add(&acc, &rhs);
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.builder.sub(&acc, &rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<B::V> {
        let mut acc = self.factor()?;
        loop {
            match self.peek().1 {
                Tok::Star => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = self.builder.mul(&acc, &rhs);
                }
                Tok::Slash => {
                    let (off, _) = self.bump();
                    let rhs = self.factor()?;
                    acc = self.builder.div(&acc, &rhs, off)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<B::V> {
        if matches!(self.peek().1, Tok::Minus) {
            self.bump();
            let v = self.factor()?;
            return Ok(self.builder.neg(&v));
        }
        let base = self.base()?;
        if matches!(self.peek().1, Tok::Caret) {
            let (off, _) = self.bump();
            let negate = if matches!(self.peek().1, Tok::Minus) {
                self.bump();
                true
            } else {
                false
            };
            let (koff, tok) = self.bump();
            let k = match tok {
                Tok::Int(n) => i64::try_from(&n).map_err(|_| Error::Parse {
                    offset: koff,
                    msg: "exponent out of range".to_string(),
                })?,
                _ => {
                    return Err(Error::Parse {
                        offset: koff,
                        msg: "expected integer exponent".to_string(),
                    })
                }
            };
            return self.builder.pow(&base, if negate { -k } else { k }, off);
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<B::V> {
        let (off, tok) = self.bump();
        match tok {
            Tok::Int(n) => Ok(self.builder.num(Q::from_integer(n))),
            Tok::Ident(name) => self.builder.var(&name, off),
            Tok::LParen => {
                let v = self.expr()?;
                let (off2, tok2) = self.bump();
                if tok2 != Tok::RParen {
                    return Err(Error::Parse {
                        offset: off2,
                        msg: "expected ')'".to_string(),
                    });
                }
                Ok(v)
            }
            _ => Err(Error::Parse {
                offset: off,
                msg: "expected a number, variable, or '('".to_string(),
            }),
        }
    }

    fn finish(&mut self, v: B::V) -> Result<B::V> {
        let (off, tok) = self.peek().clone();
        if tok != Tok::Eof {
            return Err(Error::Parse {
                offset: off,
                msg: "trailing input".to_string(),
            });
        }
        Ok(v)
    }
}

fn run<B: Builder>(input: &str, builder: &B) -> Result<B::V> {
    let toks = tokenize(input)?;
    let mut p = Parser {
        toks,
        pos: 0,
        builder,
    };
    let v = p.expr()?;
    p.finish(v)
}

/// Parse a polynomial in the declared variables.
pub fn parse_poly(input: &str, vars: &[String]) -> Result<Poly> {
    run(input, &PolyBuilder { vars })
}

/// Parse an exact series/Laurent polynomial in t.
pub fn parse_series(input: &str) -> Result<LaurentSeries> {
    run(input, &SeriesBuilder)
}

/// Parse a rational constant such as "3/2" or "-1".
pub fn parse_rational(input: &str) -> Result<Q> {
    let s = parse_series(input)?;
    if s.is_exactly_zero() {
        return Ok(Q::zero());
    }
    if s.ord() == Some(0) && s.terms().count() == 1 {
        return Ok(s.coeff(0));
    }
    Err(Error::Parse {
        offset: 0,
        msg: "expected a rational constant".to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{q, qi, Prec};

    fn vars(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn series_polynomial_literal() {
        let s = parse_series("t^2 - 2*t^3").unwrap();
        assert_eq!(s.prec(), Prec::Exact);
        assert_eq!(s.coeff(2), qi(1));
        assert_eq!(s.coeff(3), qi(-2));
    }

    #[test]
    fn series_negative_power_and_fraction() {
        let s = parse_series("t^-1 + 1/2").unwrap();
        assert_eq!(s.coeff(-1), qi(1));
        assert_eq!(s.coeff(0), q(1, 2));
    }

    #[test]
    fn series_parenthesized_product() {
        let s = parse_series("t*(1 - t)^2").unwrap();
        assert_eq!(s.coeff(1), qi(1));
        assert_eq!(s.coeff(2), qi(-2));
        assert_eq!(s.coeff(3), qi(1));
    }

    #[test]
    fn poly_cusp() {
        let f = parse_poly("x^3 - y^2", &vars(&["x", "y"])).unwrap();
        assert_eq!(f.display_with(&vars(&["x", "y"])), "-y^2 + x^3");
    }

    #[test]
    fn poly_three_lines_with_parens() {
        let v = vars(&["x", "y"]);
        let f = parse_poly("x*y*(x - y)", &v).unwrap();
        let g = parse_poly("x^2*y - x*y^2", &v).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn unknown_variable_reports_offset() {
        let err = parse_poly("x + w", &vars(&["x", "y"])).unwrap_err();
        match err {
            crate::error::Error::Parse { offset, .. } => assert_eq!(offset, 4),
            e => panic!("wrong error {e:?}"),
        }
    }

    #[test]
    fn trailing_garbage_rejected() {
        let err = parse_series("t^2 )").unwrap_err();
        match err {
            crate::error::Error::Parse { offset, .. } => assert_eq!(offset, 4),
            e => panic!("wrong error {e:?}"),
        }
    }

    #[test]
    fn division_by_variable_rejected() {
        assert!(parse_poly("x/y", &vars(&["x", "y"])).is_err());
        // but by a constant is fine
        let f = parse_poly("x/2", &vars(&["x", "y"])).unwrap();
        assert_eq!(f, Poly::var(2, 0).scale(&q(1, 2)));
    }

    #[test]
    fn rational_constants() {
        assert_eq!(parse_rational("3/2").unwrap(), q(3, 2));
        assert_eq!(parse_rational("-1").unwrap(), qi(-1));
        assert_eq!(parse_rational("0").unwrap(), qi(0));
        assert!(parse_rational("t").is_err());
    }

    #[test]
    fn double_negation_parses() {
        let s = parse_series("--t").unwrap();
        assert_eq!(s.coeff(1), qi(1));
    }
}
