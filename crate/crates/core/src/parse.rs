//! Recursive-descent parser for polynomial and rational-function expressions.
//!
//! Grammar (whitespace-insensitive):
//!   expr   := term (('+' | '-') term)*
//!   term   := factor (('*' | '/') factor)*
//!   factor := ('-' factor) | atom ('^' uint)?
//!   atom   := uint | variable | '(' expr ')'
//!
//! Values live in the rational-function field over the declared variables, so
//! "3/4", "x/2" and "(1+2*t)/(1+3*t)" all parse; callers that need a plain
//! polynomial reject nonconstant denominators.

use crate::error::{CoreError, Result};
use crate::poly::UniPoly;
use crate::rational::{rat, Rat};
use crate::tripoly::TriPoly;
use num::{BigInt, Zero};
use std::collections::BTreeMap;

/// Sparse polynomial over an arbitrary variable list.
pub type MultiPoly = BTreeMap<Vec<u32>, Rat>;

fn mp_zero() -> MultiPoly {
    BTreeMap::new()
}

fn mp_const(c: Rat, nvars: usize) -> MultiPoly {
    let mut m = mp_zero();
    if !c.is_zero() {
        m.insert(vec![0; nvars], c);
    }
    m
}

fn mp_add_term(m: &mut MultiPoly, e: Vec<u32>, c: Rat) {
    if c.is_zero() {
        return;
    }
    let entry = m.entry(e.clone()).or_insert_with(|| rat(0));
    *entry = &*entry + &c;
    if entry.is_zero() {
        m.remove(&e);
    }
}

fn mp_add(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let mut out = a.clone();
    for (e, c) in b {
        mp_add_term(&mut out, e.clone(), c.clone());
    }
    out
}

fn mp_neg(a: &MultiPoly) -> MultiPoly {
    a.iter().map(|(e, c)| (e.clone(), -c)).collect()
}

fn mp_mul(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let mut out = mp_zero();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            mp_add_term(&mut out, e, ca * cb);
        }
    }
    out
}

fn mp_pow(a: &MultiPoly, n: u32, nvars: usize) -> MultiPoly {
    let mut acc = mp_const(rat(1), nvars);
    for _ in 0..n {
        acc = mp_mul(&acc, a);
    }
    acc
}

fn mp_is_const(a: &MultiPoly) -> Option<Rat> {
    match a.len() {
        0 => Some(rat(0)),
        1 => {
            let (e, c) = a.iter().next().unwrap();
            if e.iter().all(|&x| x == 0) {
                Some(c.clone())
            } else {
                None
            }
        }
        _ => None,
    }
}

/// Numerator/denominator pair in the rational-function field.
#[derive(Clone)]
pub struct RatioPoly {
    pub num: MultiPoly,
    pub den: MultiPoly,
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn new(src: &str, vars: &'a [&'a str]) -> Self {
        Parser { chars: src.chars().collect(), pos: 0, vars }
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.bump() == Some(c) {
            Ok(())
        } else {
            Err(CoreError::Parse(format!("expected '{c}' at position {}", self.pos)))
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(CoreError::Parse(format!("expected number at position {start}")));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse()
            .map_err(|_| CoreError::Parse(format!("bad number {s:?}")))
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(CoreError::Parse(format!("expected name at position {start}")));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn atom(&mut self) -> Result<RatioPoly> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                Ok(RatioPoly {
                    num: mp_const(Rat::from_integer(n), self.nvars()),
                    den: mp_const(rat(1), self.nvars()),
                })
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let name = self.ident()?;
                let idx = self
                    .vars
                    .iter()
                    .position(|v| **v == name)
                    .ok_or_else(|| CoreError::Parse(format!("unknown variable {name:?}")))?;
                let mut e = vec![0u32; self.nvars()];
                e[idx] = 1;
                let mut num = mp_zero();
                num.insert(e, rat(1));
                Ok(RatioPoly { num, den: mp_const(rat(1), self.nvars()) })
            }
            other => Err(CoreError::Parse(format!(
                "unexpected {other:?} at position {}",
                self.pos
            ))),
        }
    }

    fn factor(&mut self) -> Result<RatioPoly> {
        if self.peek() == Some('-') {
            self.bump();
            let f = self.factor()?;
            return Ok(RatioPoly { num: mp_neg(&f.num), den: f.den });
        }
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.bump();
            let n = self.uint()?;
            let n: u32 = n
                .try_into()
                .map_err(|_| CoreError::Parse("exponent too large".into()))?;
            return Ok(RatioPoly {
                num: mp_pow(&base.num, n, self.nvars()),
                den: mp_pow(&base.den, n, self.nvars()),
            });
        }
        Ok(base)
    }

    fn term(&mut self) -> Result<RatioPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    let f = self.factor()?;
                    acc = RatioPoly {
                        num: mp_mul(&acc.num, &f.num),
                        den: mp_mul(&acc.den, &f.den),
                    };
                }
                Some('/') => {
                    self.bump();
                    let f = self.factor()?;
                    if f.num.is_empty() {
                        return Err(CoreError::Parse("division by zero".into()));
                    }
                    acc = RatioPoly {
                        num: mp_mul(&acc.num, &f.den),
                        den: mp_mul(&acc.den, &f.num),
                    };
                }
                _ => return Ok(acc),
            }
        }
    }

    fn expr(&mut self) -> Result<RatioPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    let t = self.term()?;
                    acc = ratio_add(&acc, &t);
                }
                Some('-') => {
                    self.bump();
                    let t = self.term()?;
                    acc = ratio_add(&acc, &RatioPoly { num: mp_neg(&t.num), den: t.den });
                }
                _ => return Ok(acc),
            }
        }
    }
}

fn ratio_add(a: &RatioPoly, b: &RatioPoly) -> RatioPoly {
    // keep a common denominator when the two already agree
    if a.den == b.den {
        return RatioPoly { num: mp_add(&a.num, &b.num), den: a.den.clone() };
    }
    RatioPoly {
        num: mp_add(&mp_mul(&a.num, &b.den), &mp_mul(&b.num, &a.den)),
        den: mp_mul(&a.den, &b.den),
    }
}

/// Parse a rational-function expression over the given variables.
pub fn parse_ratio(src: &str, vars: &[&str]) -> Result<RatioPoly> {
    let mut p = Parser::new(src, vars);
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(CoreError::Parse(format!("trailing input at position {}", p.pos)));
    }
    Ok(e)
}

/// Parse an expression that must reduce to a polynomial: any denominator has
/// to be constant.
pub fn parse_poly(src: &str, vars: &[&str]) -> Result<MultiPoly> {
    let r = parse_ratio(src, vars)?;
    let c = mp_is_const(&r.den)
        .ok_or_else(|| CoreError::Parse("expected polynomial, found nonconstant denominator".into()))?;
    if c.is_zero() {
        return Err(CoreError::Parse("division by zero".into()));
    }
    let inv = c.recip();
    Ok(r.num.into_iter().map(|(e, v)| (e, v * &inv)).collect())
}

/// Parse a trivariate polynomial in x, y, z.
pub fn parse_tripoly(src: &str) -> Result<TriPoly> {
    let m = parse_poly(src, &["x", "y", "z"])?;
    let mut p = TriPoly::zero();
    for (e, c) in m {
        p.add_term((e[0], e[1], e[2]), c);
    }
    Ok(p)
}

/// Parse a univariate polynomial in the named variable.
pub fn parse_unipoly(src: &str, var: &str) -> Result<UniPoly> {
    let m = parse_poly(src, &[var])?;
    let deg = m.keys().map(|e| e[0]).max().unwrap_or(0) as usize;
    let mut coeffs = vec![rat(0); deg + 1];
    for (e, c) in m {
        coeffs[e[0] as usize] = c;
    }
    Ok(UniPoly::new(coeffs))
}

/// Parse a univariate rational function in the named variable.
pub fn parse_uniratio(src: &str, var: &str) -> Result<(UniPoly, UniPoly)> {
    let r = parse_ratio(src, &[var])?;
    let to_uni = |m: &MultiPoly| {
        let deg = m.keys().map(|e| e[0]).max().unwrap_or(0) as usize;
        let mut coeffs = vec![rat(0); deg + 1];
        for (e, c) in m {
            coeffs[e[0] as usize] = c.clone();
        }
        UniPoly::new(coeffs)
    };
    Ok((to_uni(&r.num), to_uni(&r.den)))
}

/// Parse a bivariate polynomial; returns (i, j) -> coefficient.
pub fn parse_bipoly(src: &str, vars: [&str; 2]) -> Result<BTreeMap<(u32, u32), Rat>> {
    let m = parse_poly(src, &vars)?;
    Ok(m.into_iter().map(|(e, c)| ((e[0], e[1]), c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratq;

    #[test]
    fn tripoly_round_trip() {
        let p = parse_tripoly("1 - x - y - z + y*z").unwrap();
        assert_eq!(p.coeff((0, 0, 0)), rat(1));
        assert_eq!(p.coeff((0, 1, 1)), rat(1));
        assert_eq!(p.coeff((1, 0, 0)), rat(-1));
        let back = parse_tripoly(&p.to_expr_string()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn rationals_and_powers() {
        let p = parse_tripoly("3/4*x^2 - (1/2)*y").unwrap();
        assert_eq!(p.coeff((2, 0, 0)), ratq(3, 4));
        assert_eq!(p.coeff((0, 1, 0)), ratq(-1, 2));
        let u = parse_unipoly("(1+t)^3", "t").unwrap();
        assert_eq!(u.coeff(2), rat(3));
    }

    #[test]
    fn ratio() {
        let (n, d) = parse_uniratio("(1+2*t)/(1+3*t+5*t^2)", "t").unwrap();
        assert_eq!(n.coeff(1), rat(2));
        assert_eq!(d.coeff(2), rat(5));
        assert!(parse_poly("1/(1+t)", &["t"]).is_err());
    }
}
