//! Diagonal-preserving transformations: monomial substitutions with equal
//! column sums, rescalings by a function of the product of the variables,
//! and the parameter-scaling invariance of the family pullbacks.

use crate::error::{CoreError, Result};
use crate::families::{
    closed_form_seven, p_pair_eight, p_pair_nine, p_pair_ten, pullback_series, ClosedForm,
    Extension, FamilyParams,
};
use crate::hyp2f1::{compare_series, ratio_series};
use crate::modular::CheckReport;
use crate::oracle::{diagonal, multi_taylor, TriSeries};
use crate::parse::parse_uniratio;
use crate::poly::UniPoly;
use crate::rational::{rat, Rat};
use crate::series::TruncatedSeries;
use crate::tripoly::{RationalFn3, TriPoly};
use num::Zero;

/// Substitution (x, y, z) -> (x^A1 y^A2 z^A3, x^B1 y^B2 z^B3, x^C1 y^C2 z^C3).
///
/// `image[i][j]` is the exponent of variable j in the i-th image coordinate.
/// Validity requires a nonzero determinant, equal column sums
/// A1+B1+C1 = A2+B2+C2 = A3+B3+C3 = n, and that no image coordinate is a
/// power of the product xyz (no row with three equal entries), since such a
/// coordinate would collapse the diagonal grading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialMap {
    image: [[u32; 3]; 3],
}

impl MonomialMap {
    pub fn new(image: [[u32; 3]; 3]) -> Result<Self> {
        let m = &image;
        let det = |r: &[[u32; 3]; 3]| -> i64 {
            let v = |i: usize, j: usize| r[i][j] as i64;
            v(0, 0) * (v(1, 1) * v(2, 2) - v(1, 2) * v(2, 1))
                - v(0, 1) * (v(1, 0) * v(2, 2) - v(1, 2) * v(2, 0))
                + v(0, 2) * (v(1, 0) * v(2, 1) - v(1, 1) * v(2, 0))
        };
        for (i, row) in m.iter().enumerate() {
            if row[0] == row[1] && row[1] == row[2] {
                return Err(CoreError::InvalidMonomialMap(format!(
                    "image coordinate {} is a power of the product of the variables",
                    i + 1
                )));
            }
        }
        let sums: Vec<u32> = (0..3).map(|j| m[0][j] + m[1][j] + m[2][j]).collect();
        if sums[0] != sums[1] || sums[1] != sums[2] {
            return Err(CoreError::InvalidMonomialMap(format!(
                "column sums {}, {}, {} are not equal",
                sums[0], sums[1], sums[2]
            )));
        }
        if det(m) == 0 {
            return Err(CoreError::InvalidMonomialMap("determinant is zero".into()));
        }
        Ok(MonomialMap { image })
    }

    /// Row-major 9-entry form used by the command line.
    pub fn from_flat(entries: [u32; 9]) -> Result<Self> {
        MonomialMap::new([
            [entries[0], entries[1], entries[2]],
            [entries[3], entries[4], entries[5]],
            [entries[6], entries[7], entries[8]],
        ])
    }

    /// The common column sum; the diagonal substitution is x -> x^n.
    pub fn column_sum(&self) -> u32 {
        self.image[0][0] + self.image[1][0] + self.image[2][0]
    }

    /// Transform one exponent triple: variable i contributes its exponent
    /// times the i-th image row.
    pub fn apply_exponents(&self, e: (u32, u32, u32)) -> (u32, u32, u32) {
        let es = [e.0, e.1, e.2];
        let comp = |j: usize| (0..3).map(|i| es[i] * self.image[i][j]).sum();
        (comp(0), comp(1), comp(2))
    }

    /// The substitution self after inner; image matrix is the product.
    pub fn compose(&self, inner: &MonomialMap) -> Result<MonomialMap> {
        let mut prod = [[0u32; 3]; 3];
        for (i, row) in prod.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = (0..3).map(|k| inner.image[i][k] * self.image[k][j]).sum();
            }
        }
        MonomialMap::new(prod)
    }
}

fn transform_poly(p: &TriPoly, m: &MonomialMap) -> TriPoly {
    let mut out = TriPoly::zero();
    for (&e, c) in &p.terms {
        out.add_term(m.apply_exponents(e), c.clone());
    }
    out
}

/// Substitute the monomial images into numerator and denominator. The
/// constant term is fixed, so expandability at the origin is preserved.
pub fn apply_monomial(f: &RationalFn3, m: &MonomialMap) -> RationalFn3 {
    RationalFn3 {
        numerator: transform_poly(&f.numerator, m),
        denominator: transform_poly(&f.denominator, m),
    }
}

fn mismatch_report(tag: &str, lhs: &TruncatedSeries, rhs: &TruncatedSeries) -> CheckReport {
    let (holds, order, first_mismatch) = compare_series(lhs, rhs);
    CheckReport { tag: tag.into(), holds, order, first_mismatch }
}

/// Check that the diagonal of the substituted function is the original
/// diagonal in x^n, where n is the common column sum.
pub fn monomial_diagonal_law(
    f: &RationalFn3,
    m: &MonomialMap,
    n_terms: u32,
) -> Result<CheckReport> {
    let n = m.column_sum();
    let lhs = diagonal(&apply_monomial(f, m), n_terms)?;
    let phi = diagonal(f, n_terms.div_ceil(n))?;
    let rhs_coeffs = (0..n_terms as i64)
        .map(|e| if e % n as i64 == 0 { phi.coeff(e / n as i64) } else { rat(0) })
        .collect();
    let rhs = TruncatedSeries::new(0, n_terms as i64 - 1, rhs_coeffs);
    Ok(mismatch_report("monomial-diagonal-law", &lhs, &rhs))
}

/// Rescaling function F(t) of the product t = xyz, finite and nonzero at 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RescaleFn {
    pub num: UniPoly,
    pub den: UniPoly,
}

impl RescaleFn {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.coeff(0).is_zero() || num.coeff(0).is_zero() {
            return Err(CoreError::ExpansionAtPole);
        }
        Ok(RescaleFn { num, den })
    }

    /// Parse "p(t)/q(t)" or a bare polynomial in t.
    pub fn parse(src: &str) -> Result<Self> {
        let (num, den) = parse_uniratio(src, "t")?;
        RescaleFn::new(num, den)
    }

    /// Series of F itself in one variable.
    pub fn series(&self, order: i64) -> Result<TruncatedSeries> {
        ratio_series(&self.num, &self.den, order)
    }
}

fn unipoly_in_product(p: &UniPoly) -> TriPoly {
    let mut out = TriPoly::zero();
    for (k, c) in p.coeffs.iter().enumerate() {
        out.add_term((k as u32, k as u32, k as u32), c.clone());
    }
    out
}

fn power_table(base: &TriPoly, max: u32) -> Vec<TriPoly> {
    let mut table = vec![TriPoly::one()];
    for k in 1..=max as usize {
        table.push(&table[k - 1] * base);
    }
    table
}

/// The function f(xF(xyz), yF(xyz), zF(xyz)) with denominators of F cleared:
/// a term of total degree s picks up F^s, so multiplying numerator and
/// denominator by den_F^D (D the largest total degree) keeps both polynomial.
pub fn rescaled_fn(f: &RationalFn3, fun: &RescaleFn) -> Result<RationalFn3> {
    let total = |e: (u32, u32, u32)| e.0 + e.1 + e.2;
    let deg_of = |p: &TriPoly| p.terms.keys().map(|&e| total(e)).max().unwrap_or(0);
    let d = deg_of(&f.numerator).max(deg_of(&f.denominator));
    let num_pows = power_table(&unipoly_in_product(&fun.num), d);
    let den_pows = power_table(&unipoly_in_product(&fun.den), d);
    let clear = |p: &TriPoly| {
        let mut out = TriPoly::zero();
        for (&e, c) in &p.terms {
            let s = total(e) as usize;
            let factor = &num_pows[s] * &den_pows[d as usize - s];
            out = &out + &factor.scale(c).mul_full(&TriPoly::monomial(rat(1), e));
        }
        out
    };
    RationalFn3::new(clear(&f.numerator), clear(&f.denominator))
}

/// Multi-Taylor series of the rescaled function to a per-variable cap.
pub fn apply_rescaling(f: &RationalFn3, fun: &RescaleFn, cap: u32) -> Result<TriSeries> {
    multi_taylor(&rescaled_fn(f, fun)?, cap)
}

/// Check that the diagonal of the rescaled function is Phi(x F(x)^3), with
/// Phi the original diagonal.
pub fn rescaling_diagonal_law(
    f: &RationalFn3,
    fun: &RescaleFn,
    n_terms: u32,
) -> Result<CheckReport> {
    let order = n_terms as i64 - 1;
    let lhs = diagonal(&rescaled_fn(f, fun)?, n_terms)?;
    let phi = diagonal(f, n_terms)?;
    let fs = fun.series(order)?;
    let inner = (&(&fs * &fs) * &fs).shift(1).truncate(order);
    let rhs = phi.compose(&inner)?;
    Ok(mismatch_report("rescaling-diagonal-law", &lhs, &rhs))
}

fn closed_form_of(p: &FamilyParams) -> Result<ClosedForm> {
    match p.ext {
        Extension::None => closed_form_seven(p),
        Extension::Cubic { .. } => p_pair_eight(p),
        Extension::TwoCubics { .. } => p_pair_nine(p),
        Extension::ThreeCubics { .. } => p_pair_ten(p),
    }
}

/// Rescale parameters: everything carries the overall factor, each b_i the
/// per-axis factor of its variable, each quadratic/cubic coefficient the
/// product of the factors of the variables in its monomial.
pub fn scaled_family(p: &FamilyParams, overall: &Rat, axis: &[Rat; 3]) -> Result<FamilyParams> {
    let (l1, l2, l3) = (&axis[0], &axis[1], &axis[2]);
    let b = [&p.b[0] * l1, &p.b[1] * l2, &p.b[2] * l3].map(|v| &v * overall);
    let c = [&p.c[0] * &(l2 * l3), &p.c[1] * &(l1 * l3), &p.c[2] * &(l1 * l2)]
        .map(|v| &v * overall);
    let ext = match &p.ext {
        Extension::None => Extension::None,
        Extension::Cubic { d } => Extension::Cubic { d: d * &(l1 * l1 * l2) * overall },
        Extension::TwoCubics { d, e } => Extension::TwoCubics {
            d: d * &(l1 * l1 * l2) * overall,
            e: e * &(l3 * l3 * l2) * overall,
        },
        Extension::ThreeCubics { d } => Extension::ThreeCubics {
            d: [
                &d[0] * &(l1 * l1 * l2) * overall,
                &d[1] * &(l2 * l2 * l3) * overall,
                &d[2] * &(l3 * l3 * l1) * overall,
            ],
        },
    };
    FamilyParams::new(&p.a * overall, b, c, ext)
}

/// Check that the pullback series of the family is unchanged under parameter
/// scaling once x -> x/(l1*l2*l3) compensates the per-axis factors.
pub fn verify_param_scaling(
    p: &FamilyParams,
    lambdas: &[Rat; 4],
    order: i64,
) -> Result<CheckReport> {
    if lambdas.iter().any(|l| l.is_zero()) {
        return Err(CoreError::Parse("scaling factors must be nonzero".into()));
    }
    let axis = [lambdas[1].clone(), lambdas[2].clone(), lambdas[3].clone()];
    let scaled = scaled_family(p, &lambdas[0], &axis)?;
    let base = pullback_series(&closed_form_of(p)?, order)?;
    let shifted = pullback_series(&closed_form_of(&scaled)?, order)?
        .scale_arg(&(&axis[0] * &axis[1] * &axis[2]).recip());
    let report = mismatch_report("param-scaling", &base, &shifted);
    if !report.holds {
        return Err(CoreError::InvarianceViolation(format!(
            "pullback changed at order {}",
            report.first_mismatch.unwrap_or(-1)
        )));
    }
    Ok(report)
}
