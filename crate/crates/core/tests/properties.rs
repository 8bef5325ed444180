//! Randomized algebraic invariants for series, polynomials, the diagonal
//! oracle, and the symmetry transforms.

use diag2f1_core::hyp2f1::{gauss_series, HypParams};
use diag2f1_core::oracle::{diagonal, multi_taylor};
use diag2f1_core::rational::{rat, ratq, Rat};
use diag2f1_core::series::TruncatedSeries;
use diag2f1_core::symmetry::MonomialMap;
use diag2f1_core::tripoly::{RationalFn3, TriPoly};
use num::{One, Zero};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=9).prop_map(|(n, d)| ratq(n, d))
}

fn series(order: i64) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(small_rat(), (order + 1) as usize)
        .prop_map(move |c| TruncatedSeries::new(0, order, c))
}

/// Series with a nonzero constant term, safe for inverses.
fn unit_series(order: i64) -> impl Strategy<Value = TruncatedSeries> {
    series(order).prop_map(|mut s| {
        if s.coeff(0).is_zero() {
            s.coeffs[0] = rat(1);
        }
        s
    })
}

/// Series with constant term 1, so every rational power has a rational branch.
fn monic_series(order: i64) -> impl Strategy<Value = TruncatedSeries> {
    series(order).prop_map(|mut s| {
        s.coeffs[0] = rat(1);
        s
    })
}

/// Series with zero constant term, safe as a composition inner argument.
fn vanishing_series(order: i64) -> impl Strategy<Value = TruncatedSeries> {
    series(order).prop_map(|mut s| {
        s.coeffs[0] = rat(0);
        s
    })
}

fn exponent() -> impl Strategy<Value = Rat> {
    (-5i64..=5, 1i64..=4).prop_map(|(p, q)| ratq(if p == 0 { 1 } else { p }, q))
}

proptest! {
    #[test]
    fn series_ring_axioms(a in series(12), b in series(12), c in series(12)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn inverse_is_a_right_inverse(s in unit_series(14)) {
        let prod = &s * &s.inverse().unwrap();
        prop_assert_eq!(prod, TruncatedSeries::one(14));
    }

    #[test]
    fn rational_powers_compose_and_cancel(s in monic_series(12), alpha in exponent()) {
        let p = s.pow_rational(&alpha).unwrap();
        let q = s.pow_rational(&-&alpha).unwrap();
        prop_assert_eq!(&p * &q, TruncatedSeries::one(12));
        prop_assert_eq!(s.pow_rational(&rat(1)).unwrap(), s);
    }

    #[test]
    fn power_commutes_with_composition(
        outer in monic_series(10),
        inner in vanishing_series(10),
        alpha in exponent(),
    ) {
        let lhs = outer.pow_rational(&alpha).unwrap().compose(&inner).unwrap();
        let rhs = outer.compose(&inner).unwrap().pow_rational(&alpha).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gauss_euler_transformation(
        (an, ad) in (-5i64..=5, 1i64..=3),
        (bn, bd) in (-5i64..=5, 1i64..=3),
        (gn, gd) in (1i64..=5, 1i64..=3),
    ) {
        // 2F1(a,b;c;x) = (1-x)^(c-a-b) 2F1(c-a, c-b; c; x)
        let alpha = ratq(an, ad);
        let beta = ratq(bn, bd);
        let gamma = ratq(gn, gd);
        let lhs = gauss_series(&HypParams::new(alpha.clone(), beta.clone(), gamma.clone()).unwrap(), 20);
        let one_minus_x = TruncatedSeries::new(0, 19, {
            let mut c = vec![rat(0); 20];
            c[0] = rat(1);
            c[1] = rat(-1);
            c
        });
        let pre = one_minus_x.pow_rational(&(&(&gamma - &alpha) - &beta)).unwrap();
        let rhs = gauss_series(
            &HypParams::new(&gamma - &alpha, &gamma - &beta, gamma).unwrap(),
            20,
        );
        prop_assert_eq!(lhs, &pre * &rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn diagonal_is_linear_in_the_numerator(
        n1 in tripoly_strategy(2),
        n2 in tripoly_strategy(2),
        den in denominator_strategy(),
    ) {
        let f1 = RationalFn3::new(n1.clone(), den.clone()).unwrap();
        let f2 = RationalFn3::new(n2.clone(), den.clone()).unwrap();
        let fsum = RationalFn3::new(&n1 + &n2, den).unwrap();
        let d1 = diagonal(&f1, 8).unwrap();
        let d2 = diagonal(&f2, 8).unwrap();
        let ds = diagonal(&fsum, 8).unwrap();
        prop_assert_eq!(&d1 + &d2, ds);
    }

    #[test]
    fn diagonal_prefix_is_cap_independent(den in denominator_strategy()) {
        let f = RationalFn3::reciprocal_of(den).unwrap();
        let short = diagonal(&f, 6).unwrap();
        let long = diagonal(&f, 10).unwrap();
        prop_assert_eq!(short.coeffs.as_slice(), &long.coeffs[..6]);
    }

    #[test]
    fn diagonal_matches_the_full_taylor_cube(den in denominator_strategy()) {
        let f = RationalFn3::reciprocal_of(den).unwrap();
        let d = diagonal(&f, 6).unwrap();
        let cube = multi_taylor(&f, 5).unwrap();
        for m in 0..=5u32 {
            prop_assert_eq!(d.coeff(m as i64), cube.coeff((m, m, m)));
        }
    }

    #[test]
    fn pfaff_transformation_holds_under_polynomial_pullbacks(
        (an, ad) in (-5i64..=5, 1i64..=3),
        (bn, bd) in (-5i64..=5, 1i64..=3),
        (gn, gd) in (1i64..=5, 1i64..=3),
        u in vanishing_series(18),
    ) {
        // 2F1(a,b;c;u) = (1-u)^(-a) 2F1(a, c-b; c; u/(u-1))
        let alpha = ratq(an, ad);
        let beta = ratq(bn, bd);
        let gamma = ratq(gn, gd);
        let lhs = gauss_series(&HypParams::new(alpha.clone(), beta.clone(), gamma.clone()).unwrap(), 19)
            .compose(&u)
            .unwrap();
        let one_minus_u = &TruncatedSeries::one(18) - &u;
        let pre = one_minus_u.pow_rational(&-&alpha).unwrap();
        let arg = &u * &(&u - &TruncatedSeries::one(18)).inverse().unwrap();
        let rhs = gauss_series(&HypParams::new(alpha, &gamma - &beta, gamma).unwrap(), 19)
            .compose(&arg)
            .unwrap();
        prop_assert_eq!(lhs, &pre * &rhs);
    }

    #[test]
    fn monomial_maps_compose_and_multiply_column_sums(
        f1 in prop::array::uniform9(0u32..=2),
        f2 in prop::array::uniform9(0u32..=2),
    ) {
        let m1 = MonomialMap::from_flat(f1);
        let m2 = MonomialMap::from_flat(f2);
        if let (Ok(m1), Ok(m2)) = (m1, m2) {
            let c = m1.compose(&m2).unwrap();
            prop_assert_eq!(c.column_sum(), m1.column_sum() * m2.column_sum());
        }
    }

    #[test]
    fn monomial_map_rejection_is_complete(f in prop::array::uniform9(0u32..=2)) {
        let rows: Vec<[u32; 3]> = f.chunks(3).map(|r| [r[0], r[1], r[2]]).collect();
        let pure_power = rows.iter().any(|r| r[0] == r[1] && r[1] == r[2]);
        let sums: Vec<u32> = (0..3).map(|j| rows.iter().map(|r| r[j]).sum()).collect();
        let unbalanced = !(sums[0] == sums[1] && sums[1] == sums[2]);
        let det = det3(&rows);
        match MonomialMap::from_flat(f) {
            Ok(m) => {
                prop_assert!(!pure_power && !unbalanced && det != 0);
                prop_assert_eq!(m.column_sum(), sums[0]);
            }
            Err(_) => prop_assert!(pure_power || unbalanced || det == 0),
        }
    }
}

fn det3(r: &[[u32; 3]]) -> i64 {
    let m: Vec<Vec<i64>> = r.iter().map(|row| row.iter().map(|&x| x as i64).collect()).collect();
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Sparse trivariate polynomial with small exponents and coefficients.
fn tripoly_strategy(max_exp: u32) -> impl Strategy<Value = TriPoly> {
    prop::collection::vec(
        ((0..=max_exp, 0..=max_exp, 0..=max_exp), small_rat()),
        1..5,
    )
    .prop_map(|terms| {
        let mut p = TriPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    })
}

/// Denominator with a guaranteed nonzero constant term.
fn denominator_strategy() -> impl Strategy<Value = TriPoly> {
    tripoly_strategy(1).prop_map(|mut p| {
        if p.constant_term().is_zero() {
            p.add_term((0, 0, 0), rat(1));
        }
        p
    })
}

#[test]
fn one_is_multiplicative_identity() {
    let s = TruncatedSeries::new(0, 5, vec![rat(3), rat(-1), rat(0), rat(2), rat(7), rat(-4)]);
    assert_eq!(&s * &TruncatedSeries::one(5), s);
    assert!(TruncatedSeries::zero(5).is_zero());
    assert!(Rat::one().is_one());
}
