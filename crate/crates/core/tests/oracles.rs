//! Expansions checked against sources independent of the engine's own
//! construction: classical recursions, hand-solved coefficients and a
//! second integration route.

use std::collections::HashMap;

use proptest::prelude::*;
use sigmaform::curvegen::{self, CurveParams, QLaurent, Star};
use sigmaform::exactnum::{CycNum, Rational};
use sigmaform::formulas::{self, golden};
use sigmaform::gradedpoly::{QPoly, Symbol};
use sigmaform::truncseries::QSeries;

fn q(s: &str) -> QPoly {
    s.parse().unwrap()
}

/// Weierstrass: `σ = Σ a_{m,n} (g₂/2)^m (2g₃)^n u^{4m+6n+1}/(4m+6n+1)!`.
fn weierstrass_a(m: i64, n: i64, memo: &mut HashMap<(i64, i64), Rational>) -> Rational {
    if m < 0 || n < 0 {
        return Rational::zero();
    }
    if (m, n) == (0, 0) {
        return Rational::one();
    }
    if let Some(v) = memo.get(&(m, n)) {
        return v.clone();
    }
    let r = |x: i64, y: i64| Rational::new(x, y);
    let a = &r(3 * (m + 1), 1) * &weierstrass_a(m + 1, n - 1, memo);
    let b = &r(16 * (n + 1), 3) * &weierstrass_a(m - 2, n + 1, memo);
    let c = &r((2 * m + 3 * n - 1) * (4 * m + 6 * n - 1), 3) * &weierstrass_a(m - 1, n, memo);
    let v = &(&a + &b) - &c;
    memo.insert((m, n), v.clone());
    v
}

#[test]
fn classical_sigma_matches_weierstrass_recursion() {
    let t = 21u32;
    let sigma = curvegen::sigma_series(&CurveParams::classical(), t).unwrap();
    let mut memo = HashMap::new();
    for k in 0..=t as i64 {
        let mut want = QPoly::zero();
        for m in 0..=k / 4 {
            for n in 0..=k / 6 {
                if 4 * m + 6 * n + 1 != k {
                    continue;
                }
                let a = weierstrass_a(m, n, &mut memo);
                let term = q("1/2*g2").pow(m as u32).mul(&q("2*g3").pow(n as u32));
                want = want.add(&term.scale_rational(&(&a * &Rational::factorial(k as u32).recip().unwrap())));
            }
        }
        assert_eq!(sigma.nth(k as u32), want, "u^{k}");
    }
    assert_eq!(sigma.nth(5), q("-1/240*g2"));
    assert_eq!(sigma.nth(7), q("-1/840*g3"));
}

#[test]
fn classical_wp_matches_laurent_recursion() {
    let kmax = 11usize;
    let mut c = vec![QPoly::zero(); kmax + 1];
    c[2] = q("1/20*g2");
    c[3] = q("1/28*g3");
    for k in 4..=kmax {
        let s = (2..=k - 2).fold(QPoly::zero(), |acc, m| acc.add(&c[m].mul(&c[k - m])));
        c[k] = s.scale_rational(&Rational::new(3, ((2 * k + 1) * (k - 3)) as i64));
    }
    let wp = curvegen::wp_series(&CurveParams::classical(), 2 * kmax as u32 - 2).unwrap();
    assert_eq!(wp.coeff(-2), QPoly::one());
    for (k, ck) in c.iter().enumerate().skip(2) {
        assert_eq!(wp.coeff(2 * k as i64 - 2), *ck, "u^{}", 2 * k - 2);
    }
    for odd in (-1..20).step_by(2) {
        assert!(wp.coeff(odd).is_zero());
    }
}

#[test]
fn x_of_t_second_coefficient_by_hand() {
    // y = t⁻³ and t⁻⁶ = x³ + μ₄x gives x = t⁻²(1 − μ₄t⁴/3 + …)
    let only = |s: Symbol| CurveParams::zero().with(s, QPoly::symbol(s));
    assert_eq!(curvegen::x_from_t(&only(Symbol::Mu4), 6).coeff(2), q("-1/3*mu4"));
    // t⁻⁶ = x³ + μ₂x² gives x = t⁻²(1 − s/3 + s²/9 + …) with s = μ₂t²
    assert_eq!(curvegen::x_from_t(&only(Symbol::Mu2), 6).coeff(2), q("1/9*mu2^2"));
    let x = curvegen::x_from_t(&CurveParams::symbolic(), 6);
    assert_eq!(x.coeff(2), golden::parse(golden::X_OF_T_2_EXACT));
    assert_ne!(x.coeff(2), golden::parse(golden::X_OF_T[4].1));
}

#[test]
fn u_of_t_by_direct_integration() {
    for p in [CurveParams::symbolic(), formulas::random_params(8)] {
        let k = 10;
        let x = curvegen::x_from_t(&p, k + 4);
        let y = QLaurent::from_parts(3, QSeries::one(&["t"], k + 4));
        let c = |v: &QPoly| QLaurent::constant("t", k + 4, v.clone());
        let denom = y.scale(&Rational::from(2)).add(&x.scale_poly(p.mu1())).add(&c(p.mu3()));
        let du = x.differentiate().mul(&denom.inverse().unwrap()).to_series().unwrap();
        let u = du.integrate(0);
        let route = curvegen::u_from_t(&p, k).unwrap();
        for d in 0..=k {
            assert_eq!(u.nth(d), route.nth(d), "t^{d}");
        }
    }
}

#[test]
fn degenerate_curve() {
    let p = CurveParams::zero();
    let sigma = curvegen::sigma_series(&p, 15).unwrap();
    assert_eq!(sigma.truncate(15), QSeries::var(&["u"], 0, 15).truncate(15));
    let x = curvegen::x_from_u(&p, 10).unwrap();
    assert_eq!(x.principal_part(), vec![(-2, QPoly::one())]);
    assert!((-1..=10).all(|k| x.coeff(k).is_zero()));
    let y = curvegen::y_from_u(&p, 10).unwrap();
    assert_eq!(y.coeff(-3), q("-1"));
    assert!((-2..=10).all(|k| y.coeff(k).is_zero()));
    let star = curvegen::star_series(&p, 10, Star::One).unwrap().truncate(10);
    let zu = QSeries::var(&["u"], 0, 10).to_cyc().scale(&CycNum::zeta()).truncate(10);
    assert_eq!(star, zu);
}

#[test]
fn sigma_in_mu1_bar_matches_printed_form() {
    let s = curvegen::sigma_series(&CurveParams::symbolic(), 7).unwrap();
    let a7 = s.nth(7).scale_rational(&Rational::factorial(7));
    assert_eq!(a7, golden::parse(golden::SIGMA_U7));
    let hurwitz = formulas::to_mu1_bar(&a7);
    assert!(hurwitz.has_integer_coefficients());
    assert!(!a7.has_integer_coefficients());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn two_point_holds_for_random_bindings(seed in any::<u64>()) {
        let p = formulas::random_params(seed);
        prop_assert!(formulas::verify_n2(&p, 8).unwrap().passed());
    }

    #[test]
    fn perturbed_two_point_fails(seed in any::<u64>(), n in 1i64..20, d in 1i64..5) {
        let p = formulas::random_params(seed);
        let bad = golden::parse(golden::N2_WP_FORM).add(&q("x_u*x_v").scale_rational(&Rational::new(n, d)));
        prop_assert!(!formulas::verify_n2_with(&p, 8, &bad).unwrap().passed());
    }

    #[test]
    fn star_sum_vanishes_for_random_bindings(seed in any::<u64>()) {
        let p = formulas::random_params(seed);
        prop_assert!(formulas::verify_star_sum(&p, 10).unwrap().passed());
    }

    #[test]
    fn fast_verdicts_agree_with_symbolic(seed in any::<u64>()) {
        let (p, _) = formulas::randomize(&CurveParams::symbolic(), seed);
        prop_assert!(formulas::verify_two_term(&p, 8).unwrap().passed());
        prop_assert!(formulas::verify_n3(&p, 8).unwrap().passed());
    }
}
