//! Gauss hypergeometric series and a catalog of two-pullback identities.
//!
//! Every identity is a pair of (prefactor, 2F1 parameters, rational pullback)
//! triples that must agree as exact series in x. The prefactor is a rational
//! power of a polynomial with an explicit branch constant; pullbacks vanish
//! at x = 0 so composition is formal.

use crate::error::{CoreError, Result};
use crate::parse::parse_uniratio;
use crate::poly::UniPoly;
use crate::rational::{rat, rat_from_str, rat_to_string, Rat};
use crate::series::TruncatedSeries;
use num::{Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypParams {
    pub alpha: Rat,
    pub beta: Rat,
    pub gamma: Rat,
}

impl HypParams {
    pub fn new(alpha: Rat, beta: Rat, gamma: Rat) -> Result<Self> {
        if gamma.is_integer() && !gamma.numer().is_positive() {
            return Err(CoreError::GammaPole(rat_to_string(&gamma)));
        }
        Ok(HypParams { alpha, beta, gamma })
    }

    /// Parse "a,b,c" as three rationals.
    pub fn parse(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split(',').collect();
        if parts.len() != 3 {
            return Err(CoreError::Parse(format!("expected three parameters in {spec:?}")));
        }
        HypParams::new(
            rat_from_str(parts[0])?,
            rat_from_str(parts[1])?,
            rat_from_str(parts[2])?,
        )
    }
}

/// Series of 2F1([alpha,beta],[gamma],x) to the given number of terms.
pub fn gauss_series(h: &HypParams, n_terms: u32) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(n_terms as usize);
    let mut c = rat(1);
    for k in 0..n_terms as i64 {
        coeffs.push(c.clone());
        // c_{k+1}/c_k = (alpha+k)(beta+k) / ((gamma+k)(1+k))
        c = c * (&h.alpha + rat(k)) * (&h.beta + rat(k))
            / ((&h.gamma + rat(k)) * rat(k + 1));
    }
    TruncatedSeries::new(0, n_terms as i64 - 1, coeffs)
}

/// prefactor * 2F1(h) composed with the pullback; pullback(0) must be 0.
pub fn pullbacked_2f1(
    h: &HypParams,
    prefactor: &TruncatedSeries,
    pullback: &TruncatedSeries,
    n_terms: u32,
) -> Result<TruncatedSeries> {
    let hyp = gauss_series(h, n_terms);
    Ok(prefactor * &hyp.compose(pullback)?)
}

/// One side of an identity: prefactor^power * 2F1(params, pullback).
///
/// The prefactor is given as a rational function of x raised to a rational
/// power; `unit` is the branch value of prefactor(0)^power. The pullback is
/// a rational function of x vanishing at x = 0.
#[derive(Debug, Clone)]
pub struct HypSide {
    pub scale: Rat,
    pub prefactor: (UniPoly, UniPoly),
    pub power: Rat,
    pub unit: Rat,
    pub hyp: HypParams,
    pub pullback: (UniPoly, UniPoly),
}

impl HypSide {
    /// Parse from expression strings: scale, prefactor "num/den", power "p/q",
    /// unit, hypergeometric upper/lower parameters, pullback "num/den".
    pub fn new(
        scale: &str,
        prefactor: &str,
        power: &str,
        unit: &str,
        params: &str,
        pullback: &str,
    ) -> Result<Self> {
        Ok(HypSide {
            scale: rat_from_str(scale)?,
            prefactor: parse_uniratio(prefactor, "x")?,
            power: rat_from_str(power)?,
            unit: rat_from_str(unit)?,
            hyp: HypParams::parse(params)?,
            pullback: parse_uniratio(pullback, "x")?,
        })
    }

    /// Expand this side as a series to the given number of terms.
    pub fn series(&self, n_terms: u32) -> Result<TruncatedSeries> {
        let order = n_terms as i64 - 1;
        let pre_ratio = ratio_series(&self.prefactor.0, &self.prefactor.1, order)?;
        let pre = pre_ratio.pow_rational_with_unit(&self.power, self.unit.clone())?;
        let pull = ratio_series(&self.pullback.0, &self.pullback.1, order)?;
        if !pull.coeff(0).is_zero() {
            return Err(CoreError::CompositionAtNonzeroPoint(rat_to_string(&pull.coeff(0))));
        }
        Ok(pullbacked_2f1(&self.hyp, &pre, &pull, n_terms)?.scale(&self.scale))
    }
}

/// Series of num(x)/den(x) at the origin; den(0) must be nonzero.
pub fn ratio_series(num: &UniPoly, den: &UniPoly, order: i64) -> Result<TruncatedSeries> {
    if den.coeff(0).is_zero() {
        return Err(CoreError::ExpansionAtPole);
    }
    Ok(&num.to_series(order) * &den.to_series(order).inverse()?)
}

pub struct IdentityRecord {
    pub id: &'static str,
    pub lhs: HypSide,
    pub rhs: HypSide,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub id: String,
    pub holds: bool,
    pub max_order_checked: i64,
    pub first_mismatch: Option<i64>,
}

/// Compare two series on their common known range.
pub fn compare_series(a: &TruncatedSeries, b: &TruncatedSeries) -> (bool, i64, Option<i64>) {
    let low = -(a.pole_order.max(b.pole_order) as i64);
    let order = a.order.min(b.order);
    for e in low..=order {
        if a.coeff(e) != b.coeff(e) {
            return (false, order, Some(e));
        }
    }
    (true, order, None)
}

/// Expand both sides of the identity and compare exactly.
pub fn verify_identity(id: &str, n_terms: u32) -> Result<VerifyReport> {
    let rec = catalog()
        .into_iter()
        .find(|r| r.id == id)
        .ok_or_else(|| CoreError::UnknownIdentity(id.into()))?;
    let lhs = rec.lhs.series(n_terms)?;
    let rhs = rec.rhs.series(n_terms)?;
    let (holds, max_order_checked, first_mismatch) = compare_series(&lhs, &rhs);
    Ok(VerifyReport { id: id.into(), holds, max_order_checked, first_mismatch })
}

pub fn identity_tags() -> Vec<&'static str> {
    catalog().iter().map(|r| r.id).collect()
}

fn side(
    scale: &str,
    prefactor: &str,
    power: &str,
    unit: &str,
    params: &str,
    pullback: &str,
) -> HypSide {
    HypSide::new(scale, prefactor, power, unit, params, pullback).expect("catalog entry parses")
}

/// The identity catalog. Entries with free parameters are instantiated at
/// fixed rational parameter values chosen to keep every factor generic.
pub fn catalog() -> Vec<IdentityRecord> {
    let mut v: Vec<IdentityRecord> = Vec::new();
    let mut push = |id: &'static str, lhs: HypSide, rhs: HypSide| {
        v.push(IdentityRecord { id, lhs, rhs });
    };

    // 2F1([1/12,7/12],[1],x) = (1-x)^(-1/12) 2F1([1/12,5/12],[1],-x/(1-x))
    push(
        "2F1identitybis",
        side("1", "1", "1", "1", "1/12,7/12,1", "x"),
        side("1", "1-x", "-1/12", "1", "1/12,5/12,1", "-x/(1-x)"),
    );
    // Maier tau->3 chain, both equalities
    push(
        "identity1z",
        side(
            "1",
            "(9*x+243)/(x+243)",
            "1/4",
            "1",
            "1/12,5/12,1",
            "1728*x^3/((x+27)*(x+243)^3)",
        ),
        side(
            "1",
            "(x+27)/(9*x+27)",
            "1/4",
            "1",
            "1/12,5/12,1",
            "1728*x/((x+27)*(x+3)^3)",
        ),
    );
    push(
        "identity1z2",
        side(
            "1",
            "(x+27)/(9*x+27)",
            "1/4",
            "1",
            "1/12,5/12,1",
            "1728*x/((x+27)*(x+3)^3)",
        ),
        side("1", "1", "1", "1", "1/3,2/3,1", "x/(x+27)"),
    );
    // 2F1([1/3,1/3],[1],x) in two pullbacks
    push(
        "identity13",
        side("1", "1", "1", "1", "1/3,1/3,1", "x"),
        side("1", "1-x", "-1/3", "1", "1/3,2/3,1", "-x/(1-x)"),
    );
    push(
        "identity13b",
        side("1", "1", "1", "1", "1/3,1/3,1", "x"),
        side(
            "1",
            "(1-9*x)^3*(1-x)",
            "-1/12",
            "1",
            "1/12,5/12,1",
            "-64*x/((1-9*x)^3*(1-x))",
        ),
    );
    // same pair at argument -x/27
    push(
        "identity13c",
        side("1", "1", "1", "1", "1/3,1/3,1", "-x/27"),
        side("1", "1+x/27", "-1/3", "1", "1/3,2/3,1", "x/(x+27)"),
    );
    push(
        "identity13d",
        side("1", "1", "1", "1", "1/3,1/3,1", "-x/27"),
        side(
            "1",
            "(x+3)^3*(x+27)/729",
            "-1/12",
            "1",
            "1/12,5/12,1",
            "1728*x/((x+3)^3*(x+27))",
        ),
    );
    // (9-8x)/9)^(1/4) 2F1([1/3,2/3],[1],x) = 2F1([1/12,5/12],[1],64x^3(1-x)/(9-8x)^3)
    push(
        "identity0",
        side("1", "(9-8*x)/9", "1/4", "1", "1/3,2/3,1", "x"),
        side("1", "1", "1", "1", "1/12,5/12,1", "64*x^3*(1-x)/(9-8*x)^3"),
    );
    // symmetric-subcase bridge at (a,b,c)=(1,2,3): canalso2 versus 2F15Hypform
    // P2 = a(24c^3x^2 - 24b(ac-b^2)x + a^3), P5 = (27c^3x^2-27b(ac-b^2)x+a^3)(c^3x-b(ac-b^2))^3
    push(
        "canalso2",
        side("1", "1", "1", "1", "1/3,2/3,1", "-27*x*(27*x+2)"),
        side(
            "1",
            "648*x^2+48*x+1",
            "-1/4",
            "1",
            "1/12,5/12,1",
            "-1728*x^3*(729*x^2+54*x+1)*(27*x+2)^3/(648*x^2+48*x+1)^3",
        ),
    );
    // tau->4 chain (identi) at (a,b)=(1,2); the third display's linear term is
    // 224*a^3*b^3*x as in the P2^(2) denominator, not the misprinted 224*a^3*x
    push(
        "identi_12",
        side(
            "1",
            "1024*x^2+128*x+1",
            "-1/4",
            "1",
            "1/12,5/12,1",
            "7077888*x^4*(128*x+1)/(1024*x^2+128*x+1)^3",
        ),
        // second Hauptmodul from z = 256 b^3 x / a^3; the numerator carries
        // (a^3 + 16 b^3 x) to the first power only
        side(
            "1",
            "262144*x^2+2048*x+1",
            "-1/4",
            "1",
            "1/12,5/12,1",
            "13824*x*(128*x+1)/(262144*x^2+2048*x+1)^3",
        ),
    );
    push(
        "identi_13",
        side(
            "1",
            "1024*x^2+128*x+1",
            "-1/4",
            "1",
            "1/12,5/12,1",
            "7077888*x^4*(128*x+1)/(1024*x^2+128*x+1)^3",
        ),
        side(
            "1",
            "16384*x^2-1792*x+1",
            "-1/4",
            "1",
            "1/12,5/12,1",
            "-13824*x*(128*x+1)^4/(16384*x^2-1792*x+1)^3",
        ),
    );
    push(
        "identi_14",
        side(
            "1",
            "1024*x^2+128*x+1",
            "-1/4",
            "1",
            "1/12,5/12,1",
            "7077888*x^4*(128*x+1)/(1024*x^2+128*x+1)^3",
        ),
        side("1", "1", "1", "1", "1/2,1/2,1", "-128*x"),
    );
    // 2F1([1/2,1/2],[1],-x/16) = 2 (x^2+16x+16)^(-1/4) 2F1([1/12,5/12],[1],...)
    push(
        "identity1",
        side("1", "1", "1", "1", "1/2,1/2,1", "-x/16"),
        side(
            "2",
            "x^2+16*x+16",
            "-1/4",
            "1/2",
            "1/12,5/12,1",
            "1728*x*(x+16)/(x^2+16*x+16)^3",
        ),
    );
    // quarter-plane pair
    push(
        "ident3quart0",
        side(
            "1",
            "1+3/4*x^2",
            "-1/4",
            "1",
            "1/12,5/12,1",
            "27*x^4*(x^2+1)/(3*x^2+4)^3",
        ),
        side("1", "1", "1", "1", "1/4,3/4,1", "-x^2"),
    );
    push(
        "ident3quart",
        side(
            "1",
            "1-3/4*x^2",
            "-1/4",
            "1",
            "1/12,5/12,1",
            "27*x^4*(1-x^2)/(4-3*x^2)^3",
        ),
        side("1", "1", "1", "1", "1/4,3/4,1", "x^2"),
    );
    // 2F1([1/4,3/4],[1],x^2/(2-x)^2) = ((2-x)/(2(1+x)))^(1/2) 2F1(..., 4x/(1+x)^2)
    push(
        "newident",
        side("1", "1", "1", "1", "1/4,3/4,1", "x^2/(2-x)^2"),
        side(
            "1",
            "(2-x)/(2+2*x)",
            "1/2",
            "1",
            "1/4,3/4,1",
            "4*x/(1+x)^2",
        ),
    );
    // cubic-terms subcase identities (hyperiden), both displays
    push(
        "hyperiden",
        side("1", "1", "1", "1", "1/3,2/3,1", "-27*x"),
        side(
            "1",
            "1-216*x",
            "-1/4",
            "1",
            "1/12,5/12,1",
            "-1728*x*(1+27*x)^3/(1-216*x)^3",
        ),
    );
    push(
        "hyperiden2",
        side("1", "1", "1", "1", "1/3,2/3,1", "-27*x"),
        side(
            "1",
            "1-216*x",
            "-1/4",
            "1",
            "1/12,5/12,1",
            "1-(1+540*x-5832*x^2)^2/(1-216*x)^3",
        ),
    );
    // symmetric ten-parameter subcase (hypergeomidentity) with X = d x / a
    push(
        "hypergeomidentity",
        side(
            "1",
            "1-6*x",
            "-1",
            "1",
            "1/3,2/3,1",
            "-27*x*(1-3*x+9*x^2)/(1-6*x)^3",
        ),
        side("1", "1", "1", "1", "1/3,2/3,1", "-27*x^3"),
    );
    // diagonal-level form of the cubic-terms identity, argument -27*x^3
    push(
        "simpleThree",
        side("1", "1", "1", "1", "1/3,2/3,1", "-27*x^3"),
        side(
            "1",
            "1-216*x^3",
            "-1/4",
            "1",
            "1/12,5/12,1",
            "1-(1+540*x^3-5832*x^6)^2/(1-216*x^3)^3",
        ),
    );
    v.extend(appendix_entries());
    v
}

/// Entries transcribed from the identity appendices.
fn appendix_entries() -> Vec<IdentityRecord> {
    let mut v: Vec<IdentityRecord> = Vec::new();
    let mut push = |id: &'static str, lhs: HypSide, rhs: HypSide| {
        v.push(IdentityRecord { id, lhs, rhs });
    };

    // [1/4,1/4] as a modular form, both pullbacks
    push(
        "identity14",
        side("1", "1", "1", "1", "1/4,1/4,1", "-x/64"),
        side(
            "1",
            "(x+16)/16",
            "-1/4",
            "1",
            "1/12,5/12,1",
            "1728*x/(x+16)^3",
        ),
    );
    push(
        "identity14b",
        side("1", "1", "1", "1", "1/4,1/4,1", "-x/64"),
        side(
            "1",
            "(x+256)/256",
            "-1/4",
            "1",
            "1/12,5/12,1",
            "1728*x^2/(x+256)^3",
        ),
    );
    push(
        "identitiesFIRSTBIS4",
        side("1", "1", "1", "1", "1/4,1/4,1", "-x^2/(64*x+1024)"),
        side(
            "1",
            "(x+16)/16",
            "1/4",
            "1",
            "1/4,1/4,1",
            "-x*(x+16)/64",
        ),
    );
    // [1/2,1/2] as a modular form, both pullbacks
    push(
        "identity12",
        side("1", "1", "1", "1", "1/2,1/2,1", "-x/16"),
        side(
            "1",
            "(x^2+16*x+16)/16",
            "-1/4",
            "1",
            "1/12,5/12,1",
            "1728*x*(x+16)/(x^2+16*x+16)^3",
        ),
    );
    push(
        "identity12b",
        side("1", "1", "1", "1", "1/2,1/2,1", "-x/16"),
        side(
            "1",
            "(x^2+256*x+4096)/4096",
            "-1/4",
            "1",
            "1/12,5/12,1",
            "1728*x^4*(x+16)/(x^2+256*x+4096)^3",
        ),
    );
    push(
        "identitiesFIRSTBIS",
        side("1", "1", "1", "1", "1/2,1/2,1", "8*x*(1+x^2)/(1+x)^4"),
        side("1", "(1+x)^2", "1", "1", "1/2,1/2,1", "x^4"),
    );
    // [1/4,3/4] family
    push(
        "identity1bis",
        side("1", "1", "1", "1", "1/4,3/4,1", "x"),
        side(
            "1",
            "1+3*x",
            "-1/4",
            "1",
            "1/12,5/12,1",
            "27*x*(1-x)^2/(1+3*x)^3",
        ),
    );
    push(
        "identity1bis2",
        side("1", "1", "1", "1", "1/4,3/4,1", "64*x^2"),
        side("1", "1+8*x", "-1/2", "1", "1/2,1/2,1", "16*x/(1+8*x)"),
    );
    push(
        "identityquat",
        side("1", "1", "1", "1", "1/4,3/4,1", "x^2/(2-x)^2"),
        side("1", "(2-x)/2", "1/2", "1", "1/2,1/2,1", "x"),
    );
    push(
        "newident2bis",
        side("1", "1", "1", "1", "1/4,3/4,1", "x^2/(2-x)^2"),
        side(
            "1",
            "(2-x)/(2-4*x)",
            "1/2",
            "1",
            "1/4,3/4,1",
            "-4*x*(1-x)/(1-2*x)^2",
        ),
    );
    push(
        "newident3bis",
        side("1", "1", "1", "1", "1/4,3/4,1", "4*x/(1+x)^2"),
        side(
            "1",
            "(1+x)/(1-2*x)",
            "1/2",
            "1",
            "1/4,3/4,1",
            "-4*x*(1-x)/(1-2*x)^2",
        ),
    );
    push(
        "Funquarttroisquart",
        side("1", "1", "1", "1", "1/4,3/4,1", "x^4/(2-x^2)^2"),
        side(
            "1",
            "(2-x^2)/(2+12*x+2*x^2)",
            "1/2",
            "1",
            "1/4,3/4,1",
            "16*x*(1+x)^2/(1+6*x+x^2)^2",
        ),
    );
    // [1/3,2/3] and [1/3,1/3] direct two-pullback identities
    push(
        "doesexist",
        side("1", "1", "1", "1", "1/3,2/3,1", "x^3"),
        side(
            "1",
            "1+2*x",
            "-1",
            "1",
            "1/3,2/3,1",
            "9*x*(1+x+x^2)/(1+2*x)^3",
        ),
    );
    push(
        "doesexist2",
        side("1", "1", "1", "1", "1/3,1/3,1", "-x^3/(1-x^3)"),
        side(
            "1",
            "(1+x+x^2)/(1-2*x+x^2)",
            "1/3",
            "1",
            "1/3,1/3,1",
            "-9*x*(1+x+x^2)/(1-x)^3",
        ),
    );
    v
}
