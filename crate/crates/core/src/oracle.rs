//! Ground-truth diagonal extraction by truncated multi-Taylor expansion.
//!
//! The expansion of num/den at the origin is computed as the geometric series
//! (1/a0) * sum_k (-S/a0)^k * num with S = den - a0, every product capped at
//! a per-variable degree. The k loop stops at 3*cap because each factor of S
//! raises the total degree by at least one.

use crate::error::{CoreError, Result};
use crate::rational::{rat, Rat};
use crate::series::TruncatedSeries;
use crate::tripoly::{RationalFn3, TriPoly};
use num::{BigInt, Zero};
use std::collections::BTreeMap;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Trivariate Taylor coefficients up to a per-variable degree cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriSeries {
    pub cap: u32,
    pub terms: BTreeMap<(u32, u32, u32), Rat>,
}

impl TriSeries {
    pub fn zero(cap: u32) -> Self {
        TriSeries { cap, terms: BTreeMap::new() }
    }

    pub fn from_poly(p: &TriPoly, cap: u32) -> Self {
        let mut s = TriSeries::zero(cap);
        for (&e, c) in &p.terms {
            if e.0 <= cap && e.1 <= cap && e.2 <= cap {
                s.terms.insert(e, c.clone());
            }
        }
        s
    }

    pub fn coeff(&self, e: (u32, u32, u32)) -> Rat {
        self.terms.get(&e).cloned().unwrap_or_else(|| rat(0))
    }

    pub fn add_term(&mut self, e: (u32, u32, u32), c: Rat) {
        if c.is_zero() || e.0 > self.cap || e.1 > self.cap || e.2 > self.cap {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(|| rat(0));
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, rhs: &TriSeries) -> TriSeries {
        let mut out = self.clone();
        out.cap = self.cap.min(rhs.cap);
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out.terms.retain(|e, _| e.0 <= out.cap && e.1 <= out.cap && e.2 <= out.cap);
        out
    }

    pub fn scale(&self, k: &Rat) -> TriSeries {
        if k.is_zero() {
            return TriSeries::zero(self.cap);
        }
        TriSeries {
            cap: self.cap,
            terms: self.terms.iter().map(|(&e, c)| (e, c * k)).collect(),
        }
    }

    /// Degree-capped product with a polynomial; terms exceeding the cap in
    /// any variable are dropped immediately.
    pub fn mul_poly_capped(&self, p: &TriPoly) -> TriSeries {
        #[cfg(feature = "parallel")]
        {
            self.mul_poly_capped_par(p)
        }
        #[cfg(not(feature = "parallel"))]
        {
            self.mul_poly_capped_seq(p)
        }
    }

    pub fn mul_poly_capped_seq(&self, p: &TriPoly) -> TriSeries {
        let mut out = TriSeries::zero(self.cap);
        for (&(a, b, c), ca) in &self.terms {
            for (&(d, e, f), cb) in &p.terms {
                let g = (a + d, b + e, c + f);
                if g.0 > self.cap || g.1 > self.cap || g.2 > self.cap {
                    continue;
                }
                out.add_term(g, ca * cb);
            }
        }
        out
    }

    #[cfg(feature = "parallel")]
    pub fn mul_poly_capped_par(&self, p: &TriPoly) -> TriSeries {
        let cap = self.cap;
        let entries: Vec<_> = self.terms.iter().collect();
        let merged = entries
            .par_chunks(64.max(entries.len() / 64))
            .map(|chunk| {
                let mut local: BTreeMap<(u32, u32, u32), Rat> = BTreeMap::new();
                for (key, ca) in chunk {
                    let (a, b, c) = **key;
                    for (&(d, e, f), cb) in &p.terms {
                        let g = (a + d, b + e, c + f);
                        if g.0 > cap || g.1 > cap || g.2 > cap {
                            continue;
                        }
                        let entry = local.entry(g).or_insert_with(|| rat(0));
                        *entry = &*entry + &(*ca * cb);
                    }
                }
                local
            })
            .reduce(BTreeMap::new, |mut acc, local| {
                for (e, c) in local {
                    let entry = acc.entry(e).or_insert_with(|| rat(0));
                    *entry = &*entry + &c;
                }
                acc
            });
        let mut out = TriSeries::zero(cap);
        out.terms = merged.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out
    }
}

/// Multi-Taylor expansion of f at the origin, capped per variable.
pub fn multi_taylor(f: &RationalFn3, cap: u32) -> Result<TriSeries> {
    let a0 = f.denominator.constant_term();
    if a0.is_zero() {
        return Err(CoreError::ExpansionAtPole);
    }
    let inv_a0 = a0.recip();
    // S = den - a0, scaled by -1/a0 so the loop multiplies by (-S/a0)
    let mut s = &f.denominator - &TriPoly::constant(a0);
    s = s.scale(&-inv_a0.clone());

    let mut acc = TriSeries::from_poly(&f.numerator, cap).scale(&inv_a0);
    let mut result = acc.clone();
    for _ in 0..(3 * cap) {
        acc = acc.mul_poly_capped(&s);
        if acc.terms.is_empty() {
            break;
        }
        result = result.add(&acc);
    }
    Ok(result)
}

/// Exponent triples and integer coefficients of a cleared polynomial.
type DenseTerms = Vec<(usize, usize, usize, BigInt)>;

/// One capped product step on the dense integer cube; `n` is cap + 1 and
/// the cube is indexed by (i*n + j)*n + k.
pub fn dense_mul_capped_seq(acc: &[BigInt], n: usize, terms: &[(usize, usize, usize, BigInt)]) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); n * n * n];
    for i in 0..n {
        for j in 0..n {
            let row = (i * n + j) * n;
            for k in 0..n {
                let c = &acc[row + k];
                if c.is_zero() {
                    continue;
                }
                for (d, e, f, pc) in terms {
                    let (x, y, z) = (i + d, j + e, k + f);
                    if x < n && y < n && z < n {
                        let slot = &mut out[(x * n + y) * n + z];
                        *slot = &*slot + &(c * pc);
                    }
                }
            }
        }
    }
    out
}

#[cfg(feature = "parallel")]
pub fn dense_mul_capped_par(acc: &[BigInt], n: usize, terms: &[(usize, usize, usize, BigInt)]) -> Vec<BigInt> {
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut out = vec![BigInt::from(0); n * n * n];
            for j in 0..n {
                let row = (i * n + j) * n;
                for k in 0..n {
                    let c = &acc[row + k];
                    if c.is_zero() {
                        continue;
                    }
                    for (d, e, f, pc) in terms {
                        let (x, y, z) = (i + d, j + e, k + f);
                        if x < n && y < n && z < n {
                            let slot = &mut out[(x * n + y) * n + z];
                            *slot = &*slot + &(c * pc);
                        }
                    }
                }
            }
            out
        })
        .reduce(
            || vec![BigInt::from(0); n * n * n],
            |mut a, b| {
                for (s, v) in a.iter_mut().zip(b) {
                    if !v.is_zero() {
                        *s = &*s + v;
                    }
                }
                a
            },
        )
}

fn dense_mul_capped(acc: &[BigInt], n: usize, terms: &[(usize, usize, usize, BigInt)]) -> Vec<BigInt> {
    #[cfg(feature = "parallel")]
    {
        dense_mul_capped_par(acc, n, terms)
    }
    #[cfg(not(feature = "parallel"))]
    {
        dense_mul_capped_seq(acc, n, terms)
    }
}

/// Clear coefficient denominators and return the integer terms; the diagonal
/// of (c*num)/(c*den) is unchanged by the common factor c.
fn cleared_terms(num: &TriPoly, den: &TriPoly) -> (DenseTerms, DenseTerms) {
    let mut common = BigInt::from(1);
    for c in num.terms.values().chain(den.terms.values()) {
        common = num::integer::lcm(common, c.denom().clone());
    }
    let clear = Rat::from_integer(common);
    let to_terms = |p: &TriPoly| -> DenseTerms {
        p.terms
            .iter()
            .map(|(&(i, j, k), c)| {
                (i as usize, j as usize, k as usize, (c * &clear).to_integer())
            })
            .collect()
    };
    (to_terms(num), to_terms(den))
}

/// Diagonal series: sum over m of the coefficient of x^m y^m z^m.
///
/// Runs the same geometric-series expansion as `multi_taylor`, but on a
/// dense cube of integers with the coefficient denominators cleared first
/// and the division by a0^(k+1) deferred to the harvested diagonal entries,
/// so the bulk of the work is plain integer arithmetic.
pub fn diagonal(f: &RationalFn3, n_terms: u32) -> Result<TruncatedSeries> {
    if n_terms == 0 {
        return Ok(TruncatedSeries::new(0, -1, vec![]));
    }
    let cap = n_terms - 1;
    let n = n_terms as usize;
    let (num_terms, den_terms) = cleared_terms(&f.numerator, &f.denominator);
    let mut a0 = BigInt::from(0);
    // -S = a0 - den
    let mut minus_s: DenseTerms = Vec::new();
    for (i, j, k, c) in den_terms {
        if (i, j, k) == (0, 0, 0) {
            a0 = c;
        } else {
            minus_s.push((i, j, k, -c));
        }
    }
    if a0.is_zero() {
        return Err(CoreError::ExpansionAtPole);
    }

    let mut acc = vec![BigInt::from(0); n * n * n];
    for (i, j, k, c) in num_terms {
        if i < n && j < n && k < n {
            acc[(i * n + j) * n + k] = c;
        }
    }
    let mut coeffs = vec![rat(0); n];
    let mut a0_pow = a0.clone();
    for step in 0..=(3 * cap) {
        for (m, out) in coeffs.iter_mut().enumerate() {
            let c = &acc[(m * n + m) * n + m];
            if !c.is_zero() {
                *out = &*out + &Rat::new(c.clone(), a0_pow.clone());
            }
        }
        if step == 3 * cap || acc.iter().all(|c| c.is_zero()) {
            break;
        }
        acc = dense_mul_capped(&acc, n, &minus_s);
        a0_pow = a0_pow * &a0;
    }
    Ok(TruncatedSeries::new(0, cap as i64, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_tripoly;

    fn recip(src: &str) -> RationalFn3 {
        RationalFn3::reciprocal_of(parse_tripoly(src).unwrap()).unwrap()
    }

    #[test]
    fn central_binomial_squared() {
        // diagonal of 1/(1-x-y-z+y*z) is 2F1([1/2,1/2],[1],16x)
        let d = diagonal(&recip("1-x-y-z+y*z"), 5).unwrap();
        assert_eq!(
            d.coeffs,
            vec![rat(1), rat(4), rat(36), rat(400), rat(4900)]
        );
    }

    #[test]
    fn trivial_cases() {
        let d = diagonal(&recip("4"), 3).unwrap();
        assert_eq!(d.coeffs, vec![crate::rational::ratq(1, 4), rat(0), rat(0)]);

        let t = multi_taylor(&recip("1+x"), 4).unwrap();
        assert_eq!(t.coeff((3, 0, 0)), rat(-1));
        assert_eq!(t.coeff((2, 0, 0)), rat(1));
        assert_eq!(t.coeff((1, 1, 0)), rat(0));

        let d = diagonal(&recip("2+x"), 4).unwrap();
        assert_eq!(d.coeffs[0], crate::rational::ratq(1, 2));
        assert!(d.coeffs[1..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn cap_independence() {
        let f = recip("1-x-y-z+y*z");
        let lo = diagonal(&f, 4).unwrap();
        let hi = multi_taylor(&f, 9).unwrap();
        for m in 0..4 {
            assert_eq!(lo.coeff(m as i64), hi.coeff((m, m, m)));
        }
    }
}
