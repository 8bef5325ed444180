//! Truncated Laurent/Taylor series in one variable.
//!
//! Every series knows exactly how far it is accurate. Binary operations take
//! the minimum of the operand orders; nothing silently extends a truncation.

use crate::error::{CoreError, Result};
use crate::rational::{pow_rat, rat, rat_to_string, Rat};
use num::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficients for exponents -pole_order ..= order.
/// coeffs[i] belongs to exponent i - pole_order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub pole_order: usize,
    pub order: i64,
    pub coeffs: Vec<Rat>,
}

impl TruncatedSeries {
    /// Builds a series and normalizes the pole: exactly-zero coefficients at
    /// negative exponents are dropped so pole_order is minimal.
    pub fn new(pole_order: usize, order: i64, coeffs: Vec<Rat>) -> Self {
        assert_eq!(
            coeffs.len() as i64,
            order + pole_order as i64 + 1,
            "coefficient count must match exponent range"
        );
        let mut s = TruncatedSeries { pole_order, order, coeffs };
        s.normalize_pole();
        s
    }

    fn normalize_pole(&mut self) {
        while self.pole_order > 0 && self.coeffs.first().map_or(false, |c| c.is_zero()) {
            self.coeffs.remove(0);
            self.pole_order -= 1;
        }
    }

    pub fn zero(order: i64) -> Self {
        TruncatedSeries::new(0, order, vec![rat(0); (order + 1).max(0) as usize])
    }

    pub fn constant(c: Rat, order: i64) -> Self {
        let mut s = TruncatedSeries::zero(order);
        if order >= 0 {
            s.coeffs[0] = c;
        }
        s
    }

    pub fn one(order: i64) -> Self {
        TruncatedSeries::constant(rat(1), order)
    }

    /// The variable x as a series.
    pub fn x(order: i64) -> Self {
        let mut s = TruncatedSeries::zero(order);
        if order >= 1 {
            s.coeffs[1] = rat(1);
        }
        s
    }

    /// Coefficient of x^e; zero inside the known range, panics outside it.
    pub fn coeff(&self, e: i64) -> Rat {
        assert!(e <= self.order, "coefficient {e} beyond truncation order {}", self.order);
        let i = e + self.pole_order as i64;
        if i < 0 {
            rat(0)
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Exponent of the lowest nonzero known coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| i as i64 - self.pole_order as i64)
    }

    /// Restrict to a smaller truncation order.
    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order {
            return self.clone();
        }
        let keep = (order + self.pole_order as i64 + 1).max(0) as usize;
        if keep == 0 {
            return TruncatedSeries::new(0, -1, vec![]);
        }
        TruncatedSeries::new(self.pole_order, order, self.coeffs[..keep].to_vec())
    }

    /// Multiply by x^k (k may be negative).
    pub fn shift(&self, k: i64) -> Self {
        let new_low = -(self.pole_order as i64) + k;
        let pole = (-new_low).max(0) as usize;
        let mut coeffs = self.coeffs.clone();
        let mut order = self.order + k;
        if new_low > 0 {
            let mut pad = vec![rat(0); new_low as usize];
            pad.extend(coeffs);
            coeffs = pad;
            order = self.order + k;
        }
        TruncatedSeries::new(pole, order, coeffs)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        TruncatedSeries::new(
            self.pole_order,
            self.order,
            self.coeffs.iter().map(|c| c * k).collect(),
        )
    }

    /// Substitute x -> k*x.
    pub fn scale_arg(&self, k: &Rat) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let e = i as i64 - self.pole_order as i64;
                c * pow_rat(k, &rat(e)).expect("integer power")
            })
            .collect();
        TruncatedSeries::new(self.pole_order, self.order, coeffs)
    }

    /// Termwise derivative; the truncation order drops by one.
    pub fn derivative(&self) -> Self {
        let low = -(self.pole_order as i64);
        let coeffs: Vec<Rat> = ((low - 1)..self.order)
            .map(|e| self.coeff(e + 1) * rat(e + 1))
            .collect();
        TruncatedSeries::new((1 - low) as usize, self.order - 1, coeffs)
    }

    /// Multiplicative inverse; requires a nonzero valuation coefficient.
    /// Known exponent range shrinks with the valuation (relative accuracy).
    pub fn inverse(&self) -> Result<Self> {
        let m = self.valuation().ok_or(CoreError::ZeroDerivative)?;
        // self = c * x^m * (1 + u), u has positive valuation
        let unit = self.shift(-m); // constant term c at exponent 0, order self.order - m
        let c = unit.coeff(0);
        let n = unit.order;
        let mut inv = vec![rat(0); (n + 1) as usize];
        inv[0] = c.recip();
        for e in 1..=n {
            // sum_{j=0..e} unit[j] * inv[e-j] = 0
            let mut acc = rat(0);
            for j in 1..=e {
                let a = unit.coeff(j);
                if !a.is_zero() {
                    acc = acc + a * &inv[(e - j) as usize];
                }
            }
            inv[e as usize] = -(acc / &c);
        }
        Ok(TruncatedSeries::new(0, n, inv).shift(-m))
    }

    /// Raise to a rational power via c0^alpha * (1 + u)^alpha.
    ///
    /// Requires pole_order 0 and a nonzero constant term whose alpha power is
    /// rational under the positive branch. For the (a^4)^{1/4} := a branch
    /// rule use `pow_rational_with_unit`, passing the known value of c0^alpha.
    pub fn pow_rational(&self, alpha: &Rat) -> Result<Self> {
        if self.pole_order != 0 || self.coeffs.first().map_or(true, |c| c.is_zero()) {
            return Err(CoreError::NonRationalRoot(
                self.coeffs.first().map(rat_to_string).unwrap_or_else(|| "0".into()),
                rat_to_string(alpha),
            ));
        }
        let c0 = self.coeff(0);
        self.pow_rational_with_unit(alpha, pow_rat(&c0, alpha)?)
    }

    /// As `pow_rational`, with the branch constant c0^alpha supplied by the
    /// caller (it must satisfy unit^q = c0^p for alpha = p/q).
    pub fn pow_rational_with_unit(&self, alpha: &Rat, unit: Rat) -> Result<Self> {
        let c0 = self.coeff(0);
        if c0.is_zero() || self.pole_order != 0 {
            return Err(CoreError::NonRationalRoot("0".into(), rat_to_string(alpha)));
        }
        let q: u32 = alpha.denom().try_into().map_err(|_| {
            CoreError::NonRationalRoot(rat_to_string(&c0), rat_to_string(alpha))
        })?;
        let p = alpha.numer();
        let lhs = pow_rat(&unit, &rat(q as i64))?;
        let rhs = pow_rat(&c0, &Rat::from_integer(p.clone()))?;
        if lhs != rhs {
            return Err(CoreError::NonRationalRoot(rat_to_string(&c0), rat_to_string(alpha)));
        }
        let n = self.order;
        // u = self/c0 - 1, valuation >= 1
        let u = &self.scale(&c0.recip()) - &TruncatedSeries::one(n);
        // (1+u)^alpha = sum binom(alpha, k) u^k, k <= n
        let mut acc = TruncatedSeries::one(n);
        let mut term = TruncatedSeries::one(n);
        let mut binom = rat(1);
        for k in 0..n {
            binom = binom * (alpha - rat(k)) / rat(k + 1);
            term = &term * &u;
            if term.is_zero() {
                break;
            }
            acc = &acc + &term.scale(&binom);
        }
        Ok(acc.scale(&unit))
    }

    /// Composition self(inner); inner must vanish at the origin.
    pub fn compose(&self, inner: &TruncatedSeries) -> Result<Self> {
        if inner.pole_order != 0 || inner.order >= 0 && !inner.coeff(0).is_zero() {
            return Err(CoreError::CompositionAtNonzeroPoint(rat_to_string(&inner.coeff(0))));
        }
        let n = inner.order;
        if self.pole_order != 0 {
            // split off the principal part through inverse powers of inner
            let inv = inner.inverse()?;
            let mut acc = TruncatedSeries::zero(n - 2 * self.pole_order as i64);
            let mut ipow = TruncatedSeries::one(acc.order);
            for k in 1..=self.pole_order {
                ipow = &ipow * &inv;
                let c = self.coeff(-(k as i64));
                if !c.is_zero() {
                    acc = &acc + &ipow.scale(&c);
                }
            }
            let tail = TruncatedSeries::new(
                0,
                self.order,
                self.coeffs[self.pole_order..].to_vec(),
            );
            return Ok(&acc + &tail.compose(inner)?);
        }
        let top = self.order.min(n);
        let mut acc = TruncatedSeries::zero(n);
        for e in (0..=top).rev() {
            acc = &(&acc * inner) + &TruncatedSeries::constant(self.coeff(e), n);
        }
        Ok(acc)
    }

    /// Render with ascending exponents, e.g. "1 + 4*x - 48*x^2".
    pub fn to_string_in(&self, var: &str) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = i as i64 - self.pole_order as i64;
            let mag = c.abs();
            let mag_s = rat_to_string(&mag);
            let body = if e == 0 {
                mag_s
            } else {
                let head = if mag.is_one() { String::new() } else { format!("{mag_s}*") };
                if e == 1 {
                    format!("{head}{var}")
                } else {
                    format!("{head}{var}^{e}")
                }
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() { format!("-{body}") } else { body });
            } else {
                parts.push(format!(" {} {body}", if c.is_negative() { '-' } else { '+' }));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.concat()
        }
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        binop(self, rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        binop(self, rhs, |a, b| a - b)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::new(
            self.pole_order,
            self.order,
            self.coeffs.iter().map(|c| -c).collect(),
        )
    }
}

fn binop(
    a: &TruncatedSeries,
    b: &TruncatedSeries,
    f: impl Fn(Rat, Rat) -> Rat,
) -> TruncatedSeries {
    let pole = a.pole_order.max(b.pole_order);
    let order = a.order.min(b.order).max(-(pole as i64) - 1);
    let coeffs = (-(pole as i64)..=order)
        .map(|e| f(a.coeff(e), b.coeff(e)))
        .collect();
    TruncatedSeries::new(pole, order, coeffs)
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        // product accurate up to min(Na - pb, Nb - pa)
        let pole = self.pole_order + rhs.pole_order;
        let mut order =
            (self.order - rhs.pole_order as i64).min(rhs.order - self.pole_order as i64);
        if order + (pole as i64) < -1 {
            order = -(pole as i64) - 1;
        }
        let mut out = vec![rat(0); (order + pole as i64 + 1).max(0) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ea = i as i64 - self.pole_order as i64;
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let e = ea + j as i64 - rhs.pole_order as i64;
                if e > order {
                    break;
                }
                let idx = (e + pole as i64) as usize;
                out[idx] = &out[idx] + &(a * b);
            }
        }
        TruncatedSeries::new(pole, order, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratq;

    #[test]
    fn mul_basics() {
        let one_plus = TruncatedSeries::new(0, 3, vec![rat(1), rat(1), rat(0), rat(0)]);
        let one_minus = TruncatedSeries::new(0, 3, vec![rat(1), rat(-1), rat(0), rat(0)]);
        let p = &one_plus * &one_minus;
        assert_eq!(p, TruncatedSeries::new(0, 3, vec![rat(1), rat(0), rat(-1), rat(0)]));

        let inv_x = TruncatedSeries::new(1, 2, vec![rat(1), rat(0), rat(0), rat(0)]);
        let x = TruncatedSeries::x(3);
        let q = &inv_x * &x;
        assert_eq!(q.pole_order, 0);
        assert_eq!(q.coeff(0), rat(1));
    }

    #[test]
    fn pow_binomial() {
        // (1-4x)^(-1/2) = 1 + 2x + 6x^2 + 20x^3 + ...
        let s = TruncatedSeries::new(0, 3, vec![rat(1), rat(-4), rat(0), rat(0)]);
        let p = s.pow_rational(&ratq(-1, 2)).unwrap();
        assert_eq!(p.coeffs, vec![rat(1), rat(2), rat(6), rat(20)]);
    }

    #[test]
    fn pow_branch_unit() {
        let s = TruncatedSeries::new(0, 2, vec![rat(16), rat(1), rat(1)]);
        let p = s.pow_rational_with_unit(&ratq(1, 4), rat(-2)).unwrap();
        assert_eq!(p.coeff(0), rat(-2));
        assert!(s.pow_rational_with_unit(&ratq(1, 4), rat(3)).is_err());
    }

    #[test]
    fn compose_geometric() {
        let geom = TruncatedSeries::new(0, 4, vec![rat(1); 5]);
        let two_x = TruncatedSeries::x(4).scale(&rat(2));
        let c = geom.compose(&two_x).unwrap();
        assert_eq!(c.coeffs, vec![rat(1), rat(2), rat(4), rat(8), rat(16)]);
        assert!(geom.compose(&TruncatedSeries::one(4)).is_err());
    }

    #[test]
    fn derivative_and_inverse() {
        let inv_x = TruncatedSeries::new(1, 2, vec![rat(1), rat(0), rat(0), rat(0)]);
        let d = inv_x.derivative();
        assert_eq!(d.pole_order, 2);
        assert_eq!(d.coeff(-2), rat(-1));

        let s = TruncatedSeries::new(0, 5, vec![rat(1), rat(1), rat(0), rat(0), rat(0), rat(0)]);
        let i = s.inverse().unwrap();
        assert_eq!(i.coeffs, vec![rat(1), rat(-1), rat(1), rat(-1), rat(1), rat(-1)]);
        assert_eq!((&s * &i).coeff(3), rat(0));

        let x2 = &TruncatedSeries::x(6) * &TruncatedSeries::x(6);
        let ix2 = x2.inverse().unwrap();
        assert_eq!(ix2.coeff(-2), rat(1));
    }
}
