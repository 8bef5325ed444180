//! Closed-form diagonals for the quadratic-denominator families.
//!
//! Each family is a reciprocal rational function in three variables whose
//! diagonal equals base^{-1/4} * 2F1([1/12,5/12],[1], 1 - num^2/base^3) for
//! explicit polynomials (base, num) in the parameters. The polynomials are
//! stored as expression strings and instantiated by exact substitution, so
//! they can be proofread against their source directly.

use crate::error::{CoreError, Result};
use crate::hyp2f1::{pullbacked_2f1, HypParams};
use crate::parse::parse_poly;
use crate::poly::UniPoly;
use crate::rational::{rat, ratq, Rat};
use crate::series::TruncatedSeries;
use crate::tripoly::{RationalFn3, TriPoly};
use num::Zero;

/// Which cubic extension terms are present in the denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extension {
    /// quadratic denominator only (seven parameters)
    None,
    /// + d*x^2*y (eight parameters)
    Cubic { d: Rat },
    /// + d*x^2*y + e*y*z^2 (nine parameters)
    TwoCubics { d: Rat, e: Rat },
    /// + d1*x^2*y + d2*y^2*z + d3*z^2*x (ten parameters)
    ThreeCubics { d: [Rat; 3] },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyParams {
    pub a: Rat,
    pub b: [Rat; 3],
    pub c: [Rat; 3],
    pub ext: Extension,
}

impl FamilyParams {
    pub fn new(a: Rat, b: [Rat; 3], c: [Rat; 3], ext: Extension) -> Result<Self> {
        if a.is_zero() {
            return Err(CoreError::ExpansionAtPole);
        }
        Ok(FamilyParams { a, b, c, ext })
    }

    pub fn seven(a: Rat, b: [Rat; 3], c: [Rat; 3]) -> Result<Self> {
        FamilyParams::new(a, b, c, Extension::None)
    }

    pub fn eight(a: Rat, b: [Rat; 3], c: [Rat; 3], d: Rat) -> Result<Self> {
        FamilyParams::new(a, b, c, Extension::Cubic { d })
    }

    pub fn nine(a: Rat, b: [Rat; 3], c: [Rat; 3], d: Rat, e: Rat) -> Result<Self> {
        FamilyParams::new(a, b, c, Extension::TwoCubics { d, e })
    }

    pub fn ten(a: Rat, b: [Rat; 3], c: [Rat; 3], d: [Rat; 3]) -> Result<Self> {
        FamilyParams::new(a, b, c, Extension::ThreeCubics { d })
    }

    /// The denominator polynomial in x, y, z.
    pub fn denominator(&self) -> TriPoly {
        let mut p = TriPoly::constant(self.a.clone());
        p.add_term((1, 0, 0), self.b[0].clone());
        p.add_term((0, 1, 0), self.b[1].clone());
        p.add_term((0, 0, 1), self.b[2].clone());
        p.add_term((0, 1, 1), self.c[0].clone());
        p.add_term((1, 0, 1), self.c[1].clone());
        p.add_term((1, 1, 0), self.c[2].clone());
        match &self.ext {
            Extension::None => {}
            Extension::Cubic { d } => {
                p.add_term((2, 1, 0), d.clone());
            }
            Extension::TwoCubics { d, e } => {
                p.add_term((2, 1, 0), d.clone());
                p.add_term((0, 1, 2), e.clone());
            }
            Extension::ThreeCubics { d } => {
                p.add_term((2, 1, 0), d[0].clone());
                p.add_term((0, 2, 1), d[1].clone());
                p.add_term((1, 0, 2), d[2].clone());
            }
        }
        p
    }

    /// The reciprocal rational function whose diagonal is taken.
    pub fn rational_fn(&self) -> Result<RationalFn3> {
        RationalFn3::reciprocal_of(self.denominator())
    }

    fn values(&self) -> [Rat; 12] {
        let (d, e, d1, d2, d3) = match &self.ext {
            Extension::None => (rat(0), rat(0), rat(0), rat(0), rat(0)),
            Extension::Cubic { d } => (d.clone(), rat(0), rat(0), rat(0), rat(0)),
            Extension::TwoCubics { d, e } => (d.clone(), e.clone(), rat(0), rat(0), rat(0)),
            Extension::ThreeCubics { d } => {
                (rat(0), rat(0), d[0].clone(), d[1].clone(), d[2].clone())
            }
        };
        [
            self.a.clone(),
            self.b[0].clone(),
            self.b[1].clone(),
            self.b[2].clone(),
            self.c[0].clone(),
            self.c[1].clone(),
            self.c[2].clone(),
            d,
            e,
            d1,
            d2,
            d3,
        ]
    }

    /// Instantiate a formula in (x, a, b_i, c_i, d, e, d_i) at these parameters.
    fn poly_in_x(&self, src: &str) -> UniPoly {
        const VARS: [&str; 13] = [
            "x", "a", "b1", "b2", "b3", "c1", "c2", "c3", "d", "e", "d1", "d2", "d3",
        ];
        let vals = self.values();
        let mp = parse_poly(src, &VARS).expect("family formula parses");
        let mut coeffs: Vec<Rat> = Vec::new();
        for (exps, coeff) in mp {
            let mut c = coeff;
            for (i, v) in vals.iter().enumerate() {
                let e = *exps.get(i + 1).unwrap_or(&0);
                for _ in 0..e {
                    c = c * v;
                }
            }
            let xe = *exps.first().unwrap_or(&0) as usize;
            if coeffs.len() <= xe {
                coeffs.resize(xe + 1, rat(0));
            }
            coeffs[xe] = &coeffs[xe] + &c;
        }
        UniPoly::new(coeffs)
    }
}

/// Prefactor/pullback data: the closed form is
/// base^{-1/4} * 2F1([1/12,5/12],[1], 1 - num^2/den^3), with den = base and
/// root the fourth root of base(0) fixing the branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub prefactor_base: UniPoly,
    pub pullback_num: UniPoly,
    pub pullback_den: UniPoly,
    pub root: Rat,
}

const P2_SEVEN: &str = "\
8*(3*a*c1*c2*c3 + 2*(b1^2*c1^2 + b2^2*c2^2 + b3^2*c3^2 \
- b1*b2*c1*c2 - b1*b3*c1*c3 - b2*b3*c2*c3))*x^2 \
- 8*a*(a*(b1*c1 + b2*c2 + b3*c3) - 3*b1*b2*b3)*x + a^4";

const P4_SEVEN: &str = "\
216*c1^2*c2^2*c3^2*x^4 \
- 16*(9*a*c1*c2*c3*(b1*c1 + b2*c2 + b3*c3) \
- 6*(b1^2*b2*c1^2*c2 + b1*b2^2*c1*c2^2 + b1^2*b3*c1^2*c3 \
+ b1*b3^2*c1*c3^2 + b2^2*b3*c2^2*c3 + b2*b3^2*c2*c3^2) \
+ 4*(b1^3*c1^3 + b2^3*c2^3 + b3^3*c3^3) - 3*b1*b2*b3*c1*c2*c3)*x^3 \
+ 12*(3*a^3*c1*c2*c3 + 4*a^2*(b1^2*c1^2 + b2^2*c2^2 + b3^2*c3^2) \
+ 2*a^2*(b1*b2*c1*c2 + b1*b3*c1*c3 + b2*b3*c2*c3) \
- 12*a*b1*b2*b3*(b1*c1 + b2*c2 + b3*c3) + 18*b1^2*b2^2*b3^2)*x^2 \
- 12*a^3*(a*(b1*c1 + b2*c2 + b3*c3) - 3*b1*b2*b3)*x + a^6";

/// Constant term of the degree-5 quotient polynomial.
const Q0_SEVEN: &str =
    "-b1*b2*b3*a^3*(a*c1 - b2*b3)*(a*c2 - b1*b3)*(a*c3 - b1*b2)";

/// x-coefficient of the degree-5 quotient polynomial.
const Q1_SEVEN: &str = "\
c1*c2*c3*(b1*b2*c1*c2 + b1*b3*c1*c3 + b2*b3*c2*c3)*a^5 \
- (b1^2*b2^2*c1^2*c2^2 + b1^2*b3^2*c1^2*c3^2 + b2^2*b3^2*c2^2*c3^2 \
- 8*b1*b2*b3*c1*c2*c3*(b1*c1 + b2*c2 + b3*c3))*a^4 \
- b1*b2*b3*(57*b1*b2*b3*c1*c2*c3 \
+ 8*(b1^2*b2*c1^2*c2 + b1^2*b3*c1^2*c3 + b1*b2^2*c1*c2^2 \
+ b1*b3^2*c1*c3^2 + b2^2*b3*c2^2*c3 + b2*b3^2*c2*c3^2))*a^3 \
+ 8*b1^2*b2^2*b3^2*(b1^2*c1^2 + b2^2*c2^2 + b3^2*c3^2)*a^2 \
+ 46*b1^2*b2^2*b3^2*(b1*b2*c1*c2 + b1*b3*c1*c3 + b2*b3*c2*c3)*a^2 \
- 36*b1^3*b2^3*b3^3*(b1*c1 + b2*c2 + b3*c3)*a \
+ 27*b1^4*b2^4*b3^4";

/// d-corrections to the degree-2 base polynomial (eight parameters).
const BASE_ADD_EIGHT: &str = "\
- 48*c1^2*c2*d*x^3 + 24*b3*(a*c1 - 2*b2*b3)*d*x^2";

/// d-corrections to the degree-4 numerator polynomial (eight parameters).
const NUM_ADD_EIGHT: &str = "\
216*b3^2*c1^2*d^2*x^4 \
+ 144*(2*b1*c1^3*c2 - 4*b2*c1^2*c2^2 - b3*c1^2*c2*c3)*d*x^4 \
+ 72*(10*b2*b3*c1*c2 - a*c1^2*c2 - 2*b3^2*c1*c3)*a*d*x^3 \
- 144*a*b1*b3*c1^2*d*x^3 \
- 144*b2*b3^2*(b1*c1 + 4*b2*c2 - 2*b3*c3)*d*x^3 \
+ 36*a^2*(a*b3*c1 - 2*b2*b3^2)*d*x^2";

/// (d,e)-corrections to the degree-4 base polynomial (nine parameters).
const BASE_ADD_NINE: &str = "\
16*d^2*e^2*x^4 \
- 16*(3*c2*(c1^2*d + c3^2*e) + (b1*c1 + b3*c3 - 14*b2*c2)*d*e)*x^3 \
+ 8*(3*a*b3*c1*d + 3*a*b1*c3*e - a^2*d*e - 6*b2*b3^2*d - 6*b2*b1^2*e)*x^2";

/// (d,e)-corrections to the degree-6 numerator polynomial (nine parameters).
const NUM_ADD_NINE: &str = "\
- 12*a^4*d*e*x^2 \
+ 36*a^2*(b3*(a*c1 - 2*b2*b3)*d + b1*(a*c3 - 2*b1*b2)*e)*x^2 \
- 72*a*c1*(a*c1*c2 - 10*b2*b3*c2 + 2*b3^2*c3)*d*x^3 \
- 72*a*c3*(a*c2*c3 - 10*b1*b2*c2 + 2*b1^2*c1)*e*x^3 \
- 144*b2*b3^2*(b1*c1 + 4*b2*c2 - 2*b3*c3)*d*x^3 \
- 144*b2*b1^2*(b3*c3 + 4*b2*c2 - 2*b1*c1)*e*x^3 \
- 144*a*b1*b3*(c1^2*d + c3^2*e)*x^3 \
+ 24*a*(a*b3*c3 + a*b1*c1 - 20*a*b2*c2 + 30*b1*b2*b3)*d*e*x^3 \
+ 216*(b3^2*c1^2*d^2 + b1^2*c3^2*e^2)*x^4 \
- 144*c1^2*c2*(b3*c3 + 4*b2*c2 - 2*b1*c1)*d*x^4 \
- 144*c3^2*c2*(b1*c1 + 4*b2*c2 - 2*b3*c3)*e*x^4 \
+ 48*a^2*d^2*e^2*x^4 \
+ 96*(b1^2*c1^2 + b3^2*c3^2 + 22*b2^2*c2^2)*d*e*x^4 \
- 144*((a*b3*c1 + 4*b2*b3^2)*d + (a*b1*c3 + 4*b2*b1^2)*e)*d*e*x^4 \
+ 48*(b1*b3*c1*c3 + 15*a*c1*c2*c3 - 20*b1*b2*c1*c2 - 20*b2*b3*c2*c3)*d*e*x^4 \
+ 96*(b1*c1 + 22*b2*c2 + b3*c3)*d^2*e^2*x^5 \
- 576*c2*(c3^2*e + c1^2*d)*d*e*x^5 \
- 64*d^3*e^3*x^6";

/// d_i-corrections to the degree-3 base polynomial (ten parameters).
const BASE_ADD_TEN: &str = "\
- 24*(9*a*d1*d2*d3 - 6*(b1*c3*d2*d3 + b2*c1*d1*d3 + b3*c2*d1*d2) \
+ 2*(c1^2*c2*d1 + c1*c3^2*d3 + c2^2*c3*d2))*x^3 \
+ 24*(a*(b1*c2*d2 + b2*c3*d3 + b3*c1*d1) \
- 2*(b1^2*b3*d2 + b1*b2^2*d3 + b2*b3^2*d1))*x^2";

/// d_i-corrections to the degree-6 numerator polynomial (ten parameters).
const NUM_ADD_TEN: &str = "\
- 5832*d1^2*d2^2*d3^2*x^6 \
+ 3888*d1*d2*d3*(b1*c2*d2 + b2*c3*d3 + b3*c1*d1)*x^5 \
- 864*(c1^3*d1^2*d3 + c2^3*d1*d2^2 + c3^3*d2*d3^2)*x^5 \
- 1296*c1*c2*c3*d1*d2*d3*x^5 \
- 1296*b1*b2*b3*d1*d2*d3*x^4 \
- 1296*a*d1*d2*d3*(b1*c1 + b2*c2 + b3*c3)*x^4 \
- 1296*(b1*b2*c2*c3*d2*d3 + b1*b3*c1*c2*d1*d2 + b2*b3*c1*c3*d1*d3)*x^4 \
+ 864*(c1^2*c3*d1*d3 + c1*c2^2*d1*d2 + c2*c3^2*d2*d3)*a*x^4 \
- 864*(b1^3*d2^2*d3 + b2^3*d1*d3^2 + b3^3*d1^2*d2)*x^4 \
+ 864*(b1^2*c1*c3*d2*d3 + b1*b2*c1^2*d1*d3 + b1*b3*c3^2*d2*d3 \
+ b2^2*c1*c2*d1*d3 + b2*b3*c2^2*d1*d2 + b3^2*c2*c3*d1*d2)*x^4 \
+ 216*(b1^2*c2^2*d2^2 + b2^2*c3^2*d3^2 + b3^2*c1^2*d1^2)*x^4 \
+ 288*(b1*c1^3*c2*d1 + b2*c2^3*c3*d2 + b3*c1*c3^3*d3)*x^4 \
- 576*(b1*c1^2*c3^2*d3 + b2*c1^2*c2^2*d1 + b3*c2^2*c3^2*d2)*x^4 \
- 144*c1*c2*c3*(b1*c2*d2 + b2*c3*d3 + b3*c1*d1)*x^4 \
+ 540*d1*d2*d3*a^3*x^3 \
- 648*(b1*c3*d2*d3 + b2*c1*d1*d3 + b3*c2*d1*d2)*a^2*x^3 \
- 72*(c1^2*c2*d1 + c1*c3^2*d3 + c2^2*c3*d2)*a^2*x^3 \
+ 288*(b1^3*b3*c1*d2 + b1*b2^3*c2*d3 + b2*b3^3*c3*d1)*x^3 \
- 576*(b1^2*b2^2*c1*d3 + b1^2*b3^2*c3*d2 + b2^2*b3^2*c2*d1)*x^3 \
- 144*b1*b2*b3*(b1*c2*d2 + b2*c3*d3 + b3*c1*d1)*x^3 \
+ 864*(b1^2*b2*d2*d3 + b1*b3^2*d1*d2 + b2^2*b3*d1*d3)*a*x^3 \
- 144*(b1^2*c1*c2*d2 + b1*b2*c2^2*d2 + b1*b3*c1^2*d1 \
+ b2^2*c2*c3*d3 + b2*b3*c3^2*d3 + b3^2*c1*c3*d1)*a*x^3 \
+ 720*(b1*b2*c1*c3*d3 + b1*b3*c2*c3*d2 + b2*b3*c1*c2*d1)*a*x^3 \
+ 36*a^3*(b1*c2*d2 + b2*c3*d3 + b3*c1*d1)*x^2 \
- 72*a^2*(b1^2*b3*d2 + b1*b2^2*d3 + b2*b3^2*d1)*x^2";

/// (d1,d2)-corrections to the base polynomial when d3 = 0.
const BASE_ADD_TEN_D3ZERO: &str = "\
48*c2*(3*b3*d1*d2 - c1^2*d1 - c2*c3*d2)*x^3 \
+ 24*(a*b1*c2*d2 + a*b3*c1*d1 - 2*b1^2*b3*d2 - 2*b2*b3^2*d1)*x^2";

/// (d1,d2)-corrections to the numerator polynomial when d3 = 0.
const NUM_ADD_TEN_D3ZERO: &str = "\
- 864*c2^3*d1*d2^2*x^5 \
+ 864*(a*c1*c2^2*d1*d2 + b2*b3*c2^2*d1*d2 + b3^2*c2*c3*d1*d2 - b3^3*d1^2*d2)*x^4 \
- 576*(b2*c1^2*c2^2*d1 + b3*c2^2*c3^2*d2)*x^4 \
+ 288*(b1*c1^3*c2*d1 + b2*c2^3*c3*d2)*x^4 \
- 144*(b1*c1*c2^2*c3*d2 + b3*c1^2*c2*c3*d1)*x^4 \
+ 216*(b1^2*c2^2*d2^2 + b3^2*c1^2*d1^2 - 6*b1*b3*c1*c2*d1*d2)*x^4 \
- 72*(9*a^2*b3*c2*d1*d2 + a^2*c1^2*c2*d1 + a^2*c2^2*c3*d2)*x^3 \
- 144*a*(b1^2*c1*c2*d2 + b1*b2*c2^2*d2 + b1*b3*c1^2*d1 + b3^2*c1*c3*d1)*x^3 \
- 144*(b1^2*b2*b3*c2*d2 + b1*b2*b3^2*c1*d1)*x^3 \
+ 720*(a*b1*b3*c2*c3*d2 + a*b2*b3*c1*c2*d1)*x^3 \
- 576*(b1^2*b3^2*c3*d2 + b2^2*b3^2*c2*d1)*x^3 \
+ 288*(b1^3*b3*c1*d2 + b2*b3^3*c3*d1 + 3*a*b1*b3^2*d1*d2)*x^3 \
+ 36*a^2*(a*b1*c2*d2 + a*b3*c1*d1 - 2*b1^2*b3*d2 - 2*b2*b3^2*d1)*x^2";

fn require_shape(p: &FamilyParams, want_seven: bool) -> Result<()> {
    let ok = match (&p.ext, want_seven) {
        (Extension::None, true) => true,
        (Extension::None, false) => false,
        (_, true) => false,
        (_, false) => true,
    };
    if ok {
        Ok(())
    } else {
        Err(CoreError::WrongFamilyShape)
    }
}

/// Degree-2 prefactor/pullback-base polynomial of the quadratic family.
pub fn p2_seven(p: &FamilyParams) -> Result<UniPoly> {
    require_shape(p, true)?;
    Ok(p.poly_in_x(P2_SEVEN))
}

/// Degree-4 pullback-numerator polynomial of the quadratic family.
pub fn p4_seven(p: &FamilyParams) -> Result<UniPoly> {
    require_shape(p, true)?;
    Ok(p.poly_in_x(P4_SEVEN))
}

/// Exact quotient (num^2 - base^3) / (1728 x^3) for any closed form.
pub fn quotient_poly(cf: &ClosedForm) -> Result<UniPoly> {
    let diff = &(&cf.pullback_num * &cf.pullback_num)
        - &(&(&cf.pullback_den * &cf.pullback_den) * &cf.pullback_den);
    if diff.is_zero() {
        return Ok(UniPoly::zero());
    }
    let divisor = UniPoly::monomial(rat(1728), 3);
    diff.div_exact(&divisor)
        .map_err(|_| CoreError::InexactDivision("(num^2 - den^3)/1728/x^3".into()))
}

/// Degree-5 quotient polynomial of the quadratic family.
pub fn p5_seven(p: &FamilyParams) -> Result<UniPoly> {
    quotient_poly(&closed_form_seven(p)?)
}

/// Closed-form constant term of p5_seven.
pub fn q0_seven(p: &FamilyParams) -> Result<Rat> {
    require_shape(p, true)?;
    Ok(p.poly_in_x(Q0_SEVEN).coeff(0))
}

/// Closed-form x-coefficient of p5_seven.
pub fn q1_seven(p: &FamilyParams) -> Result<Rat> {
    require_shape(p, true)?;
    Ok(p.poly_in_x(Q1_SEVEN).coeff(0))
}

pub fn closed_form_seven(p: &FamilyParams) -> Result<ClosedForm> {
    require_shape(p, true)?;
    let base = p.poly_in_x(P2_SEVEN);
    let num = p.poly_in_x(P4_SEVEN);
    Ok(ClosedForm {
        prefactor_base: base.clone(),
        pullback_num: num,
        pullback_den: base,
        root: p.a.clone(),
    })
}

pub fn p_pair_eight(p: &FamilyParams) -> Result<ClosedForm> {
    match p.ext {
        Extension::Cubic { .. } => {}
        _ => return Err(CoreError::WrongFamilyShape),
    }
    let base = &p.poly_in_x(P2_SEVEN) + &p.poly_in_x(BASE_ADD_EIGHT);
    let num = &p.poly_in_x(P4_SEVEN) + &p.poly_in_x(NUM_ADD_EIGHT);
    Ok(ClosedForm {
        prefactor_base: base.clone(),
        pullback_num: num,
        pullback_den: base,
        root: p.a.clone(),
    })
}

pub fn p_pair_nine(p: &FamilyParams) -> Result<ClosedForm> {
    match p.ext {
        Extension::TwoCubics { .. } => {}
        _ => return Err(CoreError::WrongFamilyShape),
    }
    let base = &p.poly_in_x(P2_SEVEN) + &p.poly_in_x(BASE_ADD_NINE);
    let num = &p.poly_in_x(P4_SEVEN) + &p.poly_in_x(NUM_ADD_NINE);
    Ok(ClosedForm {
        prefactor_base: base.clone(),
        pullback_num: num,
        pullback_den: base,
        root: p.a.clone(),
    })
}

pub fn p_pair_ten(p: &FamilyParams) -> Result<ClosedForm> {
    match p.ext {
        Extension::ThreeCubics { .. } => {}
        _ => return Err(CoreError::WrongFamilyShape),
    }
    let base = &p.poly_in_x(P2_SEVEN) + &p.poly_in_x(BASE_ADD_TEN);
    let num = &p.poly_in_x(P4_SEVEN) + &p.poly_in_x(NUM_ADD_TEN);
    Ok(ClosedForm {
        prefactor_base: base.clone(),
        pullback_num: num,
        pullback_den: base,
        root: p.a.clone(),
    })
}

pub fn p_pair_nine_d3zero(p: &FamilyParams) -> Result<ClosedForm> {
    match &p.ext {
        Extension::ThreeCubics { d } if d[2].is_zero() => {}
        _ => return Err(CoreError::WrongFamilyShape),
    }
    let base = &p.poly_in_x(P2_SEVEN) + &p.poly_in_x(BASE_ADD_TEN_D3ZERO);
    let num = &p.poly_in_x(P4_SEVEN) + &p.poly_in_x(NUM_ADD_TEN_D3ZERO);
    Ok(ClosedForm {
        prefactor_base: base.clone(),
        pullback_num: num,
        pullback_den: base,
        root: p.a.clone(),
    })
}

/// The pullback 1 - num^2/den^3 as a series vanishing at x = 0.
pub fn pullback_series(cf: &ClosedForm, order: i64) -> Result<TruncatedSeries> {
    let num2 = &cf.pullback_num * &cf.pullback_num;
    let den3 = &(&cf.pullback_den * &cf.pullback_den) * &cf.pullback_den;
    if num2.coeff(0) != den3.coeff(0) {
        return Err(CoreError::PullbackNotVanishing);
    }
    let diff = &den3 - &num2;
    Ok(&diff.to_series(order) * &den3.to_series(order).inverse()?)
}

/// Series of base^{-1/4} * 2F1([1/12,5/12],[1], 1 - num^2/den^3).
pub fn evaluate_closed_form(cf: &ClosedForm, n_terms: u32) -> Result<TruncatedSeries> {
    let order = n_terms as i64 - 1;
    // branch rule: (root^4)^{1/4} := root, so base^{-1/4} starts at 1/root
    let unit = cf.root.recip();
    let prefactor = cf
        .prefactor_base
        .to_series(order)
        .pow_rational_with_unit(&ratq(-1, 4), unit)?;
    let pull = pullback_series(cf, order)?;
    let h = HypParams::new(ratq(1, 12), ratq(5, 12), rat(1))?;
    pullbacked_2f1(&h, &prefactor, &pull, n_terms)
}

/// The same diagonal written on the [1/12,7/12] side:
/// num^{-1/6} * 2F1([1/12,7/12],[1], 1728 x^3 quotient / num^2).
pub fn evaluate_closed_form_alt(cf: &ClosedForm, n_terms: u32) -> Result<TruncatedSeries> {
    let order = n_terms as i64 - 1;
    let q = quotient_poly(cf)?;
    let num2 = &cf.pullback_num * &cf.pullback_num;
    let pull_num = &UniPoly::monomial(rat(1728), 3) * &q;
    let pull = &pull_num.to_series(order) * &num2.to_series(order).inverse()?;
    // sixth-root branch rule: (root^6)^{1/6} := root
    let unit = cf.root.recip();
    let prefactor = cf
        .pullback_num
        .to_series(order)
        .pow_rational_with_unit(&ratq(-1, 6), unit)?;
    let h = HypParams::new(ratq(1, 12), ratq(7, 12), rat(1))?;
    pullbacked_2f1(&h, &prefactor, &pull, n_terms)
}

/// Both closed forms of the fully symmetric quadratic subcase
/// (b1=b2=b3=b, c1=c2=c3=c): the quartic-prefactor form and the direct
/// (1/a) * 2F1([1/3,2/3],[1], -27/a^3 * x * (c^3 x - b(ac - b^2))) form.
pub fn symmetric_subcase_forms(
    a: &Rat,
    b: &Rat,
    c: &Rat,
    n_terms: u32,
) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let p = FamilyParams::seven(
        a.clone(),
        [b.clone(), b.clone(), b.clone()],
        [c.clone(), c.clone(), c.clone()],
    )?;
    let s1 = evaluate_closed_form(&closed_form_seven(&p)?, n_terms)?;

    let order = n_terms as i64 - 1;
    let k = b * (a * c - b * b);
    // -27/a^3 * x * (c^3 x - b(ac - b^2))
    let pull_poly = UniPoly::new(vec![
        rat(0),
        rat(27) * &k / (a * a * a),
        rat(-27) * c * c * c / (a * a * a),
    ]);
    let h = HypParams::new(ratq(1, 3), ratq(2, 3), rat(1))?;
    let s2 = pullbacked_2f1(
        &h,
        &TruncatedSeries::constant(a.recip(), order),
        &pull_poly.to_series(order),
        n_terms,
    )?;
    Ok((s1, s2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::diagonal;
    use crate::parse::parse_unipoly;

    fn r(n: i64) -> Rat {
        rat(n)
    }

    fn seven(a: i64, b: [i64; 3], c: [i64; 3]) -> FamilyParams {
        FamilyParams::seven(r(a), b.map(r), c.map(r)).unwrap()
    }

    #[test]
    fn quadratic_regression_polynomials() {
        let p = seven(1, [1, 1, 1], [5, 7, 3]);
        assert_eq!(
            p2_seven(&p).unwrap(),
            parse_unipoly("2712*x^2 - 96*x + 1", "x").unwrap()
        );
        assert_eq!(
            p4_seven(&p).unwrap(),
            parse_unipoly("2381400*x^4 - 181440*x^3 + 7524*x^2 - 144*x + 1", "x").unwrap()
        );

        let trivial = seven(1, [0, 0, 0], [0, 0, 0]);
        assert_eq!(p2_seven(&trivial).unwrap(), UniPoly::one());
        assert_eq!(p4_seven(&trivial).unwrap(), UniPoly::one());

        let p2 = seven(2, [1, 1, 1], [1, 1, 1]);
        assert_eq!(
            p2_seven(&p2).unwrap(),
            parse_unipoly("48*x^2 - 48*x + 16", "x").unwrap()
        );
    }

    #[test]
    fn quotient_poly_checks() {
        // symmetric case factors as (27c^3x^2 - 27b(ac-b^2)x + a^3)(c^3x - b(ac-b^2))^3
        let p = seven(1, [2, 2, 2], [3, 3, 3]);
        let got = p5_seven(&p).unwrap();
        let want = {
            let f1 = parse_unipoly("729*x^2 + 54*x + 1", "x").unwrap();
            let f2 = parse_unipoly("27*x + 2", "x").unwrap();
            &f1 * &(&(&f2 * &f2) * &f2)
        };
        assert_eq!(got, want);

        // leading coefficient 27 c1^4 c2^4 c3^4 and q0/q1 anchors
        let p = seven(1, [1, 2, 3], [1, 1, 2]);
        let q = p5_seven(&p).unwrap();
        assert_eq!(q.coeff(5), r(27) * r(16));
        assert_eq!(q.coeff(0), q0_seven(&p).unwrap());
        assert_eq!(q.coeff(1), q1_seven(&p).unwrap());

        // degenerate subcase: c3 = 0, b1 = 0 kills the quotient
        let p = FamilyParams::seven(r(1), [r(0), r(2), r(3)], [r(1), r(2), r(0)]).unwrap();
        assert!(p5_seven(&p).unwrap().is_zero());
    }

    #[test]
    fn closed_form_matches_oracle_seven() {
        let p = seven(1, [1, 1, 1], [5, 7, 3]);
        let cf = closed_form_seven(&p).unwrap();
        let series = evaluate_closed_form(&cf, 12).unwrap();
        let dia = diagonal(&p.rational_fn().unwrap(), 12).unwrap();
        assert_eq!(series, dia);

        // the [1/12,7/12] view gives the same series
        let alt = evaluate_closed_form_alt(&cf, 12).unwrap();
        assert_eq!(alt, dia);
    }

    #[test]
    fn closed_form_matches_oracle_extensions() {
        let p8 = FamilyParams::eight(r(1), [r(1), r(1), r(1)], [r(1), r(1), r(1)], r(1)).unwrap();
        let cf8 = p_pair_eight(&p8).unwrap();
        assert_eq!(
            evaluate_closed_form(&cf8, 9).unwrap(),
            diagonal(&p8.rational_fn().unwrap(), 9).unwrap()
        );

        let p9 = FamilyParams::nine(
            r(1),
            [r(1), r(2), r(1)],
            [r(1), r(1), r(2)],
            r(1),
            r(2),
        )
        .unwrap();
        let cf9 = p_pair_nine(&p9).unwrap();
        assert_eq!(
            evaluate_closed_form(&cf9, 9).unwrap(),
            diagonal(&p9.rational_fn().unwrap(), 9).unwrap()
        );

        let p10 = FamilyParams::ten(
            r(1),
            [r(1), r(1), r(2)],
            [r(2), r(1), r(1)],
            [r(1), r(2), r(1)],
        )
        .unwrap();
        let cf10 = p_pair_ten(&p10).unwrap();
        assert_eq!(
            evaluate_closed_form(&cf10, 9).unwrap(),
            diagonal(&p10.rational_fn().unwrap(), 9).unwrap()
        );

        let p9d3 = FamilyParams::ten(
            r(1),
            [r(1), r(2), r(1)],
            [r(1), r(2), r(1)],
            [r(2), r(1), r(0)],
        )
        .unwrap();
        let cfd3 = p_pair_nine_d3zero(&p9d3).unwrap();
        assert_eq!(cfd3, p_pair_ten(&p9d3).unwrap());
        assert_eq!(
            evaluate_closed_form(&cfd3, 9).unwrap(),
            diagonal(&p9d3.rational_fn().unwrap(), 9).unwrap()
        );
    }

    #[test]
    fn extension_reductions() {
        let base = seven(2, [1, 3, 1], [1, 2, 5]);
        let cf7 = closed_form_seven(&base).unwrap();

        let p8 = FamilyParams::eight(r(2), [r(1), r(3), r(1)], [r(1), r(2), r(5)], r(0)).unwrap();
        assert_eq!(p_pair_eight(&p8).unwrap(), cf7);
        let p9 =
            FamilyParams::nine(r(2), [r(1), r(3), r(1)], [r(1), r(2), r(5)], r(0), r(0)).unwrap();
        assert_eq!(p_pair_nine(&p9).unwrap(), cf7);
        let p10 = FamilyParams::ten(
            r(2),
            [r(1), r(3), r(1)],
            [r(1), r(2), r(5)],
            [r(0), r(0), r(0)],
        )
        .unwrap();
        assert_eq!(p_pair_ten(&p10).unwrap(), cf7);
        assert_eq!(p_pair_nine_d3zero(&p10).unwrap(), cf7);
    }

    #[test]
    fn degenerate_closed_forms() {
        // c3 = 0, b1 = 0: diagonal is 1/sqrt(a^2 - 4 b2 c2 x)
        let p = FamilyParams::seven(r(1), [r(0), r(2), r(3)], [r(1), r(2), r(0)]).unwrap();
        let cf = closed_form_seven(&p).unwrap();
        let series = evaluate_closed_form(&cf, 10).unwrap();
        let want = parse_unipoly("1 - 16*x", "x")
            .unwrap()
            .to_series(9)
            .pow_rational_with_unit(&ratq(-1, 2), r(1))
            .unwrap();
        assert_eq!(series, want);
        assert_eq!(series, diagonal(&p.rational_fn().unwrap(), 10).unwrap());
    }

    #[test]
    fn symmetric_forms_agree() {
        for (a, b, c) in [(1, 0, 1), (1, 1, 0), (1, 1, 1), (2, 1, 3)] {
            let (s1, s2) = symmetric_subcase_forms(&r(a), &r(b), &r(c), 14).unwrap();
            assert_eq!(s1, s2, "symmetric subcase at ({a},{b},{c})");
        }
    }

    #[test]
    fn homogeneity_and_rescaling() {
        let p = seven(1, [1, 2, 1], [3, 1, 2]);
        let lam = ratq(3, 2);
        let scaled = FamilyParams::seven(
            &p.a * &lam,
            [&p.b[0] * &lam, &p.b[1] * &lam, &p.b[2] * &lam],
            [&p.c[0] * &lam, &p.c[1] * &lam, &p.c[2] * &lam],
        )
        .unwrap();
        // base is homogeneous of degree 4 in the parameters, num of degree 6
        let lam2 = &lam * &lam;
        let lam4 = &lam2 * &lam2;
        assert_eq!(
            p2_seven(&scaled).unwrap(),
            p2_seven(&p).unwrap().scale(&lam4)
        );
        assert_eq!(
            p4_seven(&scaled).unwrap(),
            p4_seven(&p).unwrap().scale(&(&lam4 * &lam2))
        );
        // the pullback itself is invariant
        assert_eq!(
            pullback_series(&closed_form_seven(&p).unwrap(), 10).unwrap(),
            pullback_series(&closed_form_seven(&scaled).unwrap(), 10).unwrap()
        );
    }
}
