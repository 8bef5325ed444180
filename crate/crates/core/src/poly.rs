//! Dense univariate polynomials with exact rational coefficients.

use crate::rational::{rat, rat_to_string, Rat};
use crate::series::TruncatedSeries;
use num::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// coeffs[i] is the coefficient of x^i; no trailing zeros unless zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    pub coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn one() -> Self {
        UniPoly::constant(rat(1))
    }

    /// The variable x.
    pub fn x() -> Self {
        UniPoly::new(vec![rat(0), rat(1)])
    }

    pub fn monomial(c: Rat, deg: usize) -> Self {
        let mut coeffs = vec![rat(0); deg + 1];
        coeffs[deg] = c;
        UniPoly::new(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the zero polynomial is reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(|| rat(0))
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = rat(0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, k: &Rat) -> Self {
        UniPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    /// Substitute x -> k*x.
    pub fn scale_arg(&self, k: &Rat) -> Self {
        let mut p = rat(1);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let out = c * &p;
                p = &p * k;
                out
            })
            .collect();
        UniPoly::new(coeffs)
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = UniPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Polynomial composition self(inner).
    pub fn compose(&self, inner: &UniPoly) -> Self {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// Exact division; errors if the remainder is nonzero or divisor is zero.
    pub fn div_exact(&self, d: &UniPoly) -> Result<UniPoly, String> {
        if d.is_zero() {
            return Err("division by zero polynomial".into());
        }
        let mut rem = self.clone();
        let mut q = vec![rat(0); self.coeffs.len()];
        let dl = d.coeffs.last().unwrap().clone();
        while !rem.is_zero() && rem.degree() >= d.degree() {
            let k = rem.degree() - d.degree();
            let c = rem.coeffs.last().unwrap() / &dl;
            q[k] = c.clone();
            rem = &rem - &d.mul(&UniPoly::monomial(c, k));
        }
        if rem.is_zero() {
            Ok(UniPoly::new(q))
        } else {
            Err(format!("nonzero remainder of degree {}", rem.degree()))
        }
    }

    /// Truncated series view to the given order.
    pub fn to_series(&self, order: i64) -> TruncatedSeries {
        let mut coeffs = Vec::new();
        for e in 0..=order.max(0) {
            coeffs.push(self.coeff(e as usize));
        }
        TruncatedSeries::new(0, order, coeffs)
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = rat_to_string(c);
            let body = if i == 0 {
                cs
            } else {
                let head = if c.is_one() {
                    String::new()
                } else if (-c).is_one() {
                    "-".into()
                } else {
                    format!("{cs}*")
                };
                if i == 1 {
                    format!("{head}{var}")
                } else {
                    format!("{head}{var}^{i}")
                }
            };
            if parts.is_empty() {
                parts.push(body);
            } else if let Some(stripped) = body.strip_prefix('-') {
                parts.push(format!(" - {stripped}"));
            } else {
                parts.push(format!(" + {body}"));
            }
        }
        parts.concat()
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![rat(0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratq;

    #[test]
    fn arithmetic_and_division() {
        let p = UniPoly::from_i64(&[1, 2, 1]);
        let q = UniPoly::from_i64(&[1, 1]);
        assert_eq!(p.div_exact(&q).unwrap(), q);
        assert_eq!(&q * &q, p);
        assert!(p.div_exact(&UniPoly::from_i64(&[1, 3])).is_err());
        assert_eq!(p.eval(&ratq(1, 2)), ratq(9, 4));
        assert_eq!(p.derivative(), UniPoly::from_i64(&[2, 2]));
    }

    #[test]
    fn display() {
        let p = UniPoly::from_i64(&[1, -96, 2712]);
        assert_eq!(p.to_string_in("x"), "2712*x^2 - 96*x + 1");
    }
}
