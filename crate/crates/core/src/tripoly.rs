//! Sparse exact polynomials in three variables and rational functions built
//! from them.

use crate::error::{CoreError, Result};
use crate::rational::{rat, rat_to_string, Rat};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// Map from exponent triple (i, j, k) to a nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TriPoly {
    pub terms: BTreeMap<(u32, u32, u32), Rat>,
}

impl TriPoly {
    pub fn zero() -> Self {
        TriPoly::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = TriPoly::zero();
        p.add_term((0, 0, 0), c);
        p
    }

    pub fn one() -> Self {
        TriPoly::constant(rat(1))
    }

    pub fn monomial(c: Rat, e: (u32, u32, u32)) -> Self {
        let mut p = TriPoly::zero();
        p.add_term(e, c);
        p
    }

    pub fn var(idx: usize) -> Self {
        let e = match idx {
            0 => (1, 0, 0),
            1 => (0, 1, 0),
            2 => (0, 0, 1),
            _ => panic!("variable index out of range"),
        };
        TriPoly::monomial(rat(1), e)
    }

    pub fn add_term(&mut self, e: (u32, u32, u32), c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(|| rat(0));
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Rat {
        self.terms.get(&(0, 0, 0)).cloned().unwrap_or_else(|| rat(0))
    }

    pub fn coeff(&self, e: (u32, u32, u32)) -> Rat {
        self.terms.get(&e).cloned().unwrap_or_else(|| rat(0))
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return TriPoly::zero();
        }
        TriPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn eval(&self, x: &Rat, y: &Rat, z: &Rat) -> Rat {
        let mut acc = rat(0);
        for (&(i, j, k), c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..i {
                t = t * x;
            }
            for _ in 0..j {
                t = t * y;
            }
            for _ in 0..k {
                t = t * z;
            }
            acc = acc + t;
        }
        acc
    }

    /// Per-variable maximum exponents.
    pub fn max_degrees(&self) -> (u32, u32, u32) {
        let mut m = (0, 0, 0);
        for &(i, j, k) in self.terms.keys() {
            m.0 = m.0.max(i);
            m.1 = m.1.max(j);
            m.2 = m.2.max(k);
        }
        m
    }

    /// Full product (no cap); fine for the small family denominators.
    pub fn mul_full(&self, rhs: &TriPoly) -> TriPoly {
        let mut out = TriPoly::zero();
        for (&(a, b, c), ca) in &self.terms {
            for (&(d, e, f), cb) in &rhs.terms {
                out.add_term((a + d, b + e, c + f), ca * cb);
            }
        }
        out
    }

    pub fn to_expr_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for (&(i, j, k), c) in &self.terms {
            let mut factors: Vec<String> = Vec::new();
            let mag = c.abs();
            if !mag.is_one() || (i, j, k) == (0, 0, 0) {
                factors.push(rat_to_string(&mag));
            }
            for (v, e) in [("x", i), ("y", j), ("z", k)] {
                match e {
                    0 => {}
                    1 => factors.push(v.into()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            let body = factors.join("*");
            if parts.is_empty() {
                parts.push(if c.is_negative() { format!("-{body}") } else { body });
            } else {
                parts.push(format!(" {} {body}", if c.is_negative() { '-' } else { '+' }));
            }
        }
        parts.concat()
    }
}

impl Add for &TriPoly {
    type Output = TriPoly;
    fn add(self, rhs: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &TriPoly {
    type Output = TriPoly;
    fn sub(self, rhs: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Neg for &TriPoly {
    type Output = TriPoly;
    fn neg(self) -> TriPoly {
        self.scale(&rat(-1))
    }
}

impl Mul for &TriPoly {
    type Output = TriPoly;
    fn mul(self, rhs: &TriPoly) -> TriPoly {
        self.mul_full(rhs)
    }
}

/// Quotient of two trivariate polynomials, expandable at the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFn3 {
    pub numerator: TriPoly,
    pub denominator: TriPoly,
}

impl RationalFn3 {
    pub fn new(numerator: TriPoly, denominator: TriPoly) -> Result<Self> {
        if denominator.constant_term().is_zero() {
            return Err(CoreError::ExpansionAtPole);
        }
        Ok(RationalFn3 { numerator, denominator })
    }

    pub fn reciprocal_of(denominator: TriPoly) -> Result<Self> {
        RationalFn3::new(TriPoly::one(), denominator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let x = TriPoly::var(0);
        let y = TriPoly::var(1);
        let p = &x + &y;
        let q = &p * &p;
        assert_eq!(q.coeff((1, 1, 0)), rat(2));
        assert_eq!(q.coeff((2, 0, 0)), rat(1));
        assert!((&q - &q).is_zero());
        assert_eq!(q.eval(&rat(1), &rat(2), &rat(0)), rat(9));
    }

    #[test]
    fn expansion_guard() {
        assert!(RationalFn3::reciprocal_of(TriPoly::var(0)).is_err());
    }
}
