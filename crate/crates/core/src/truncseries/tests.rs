use proptest::prelude::*;

use super::*;
use crate::exactnum::{CycNum, Rational};
use crate::gradedpoly::{GradedPoly, QPoly};

fn q(s: &str) -> QPoly {
    s.parse().unwrap()
}

fn uni(var: &str, bound: u32, cs: &[&str]) -> QSeries {
    TruncSeries::univariate(var, bound, cs.iter().map(|c| q(c)).collect())
}

#[test]
fn square_of_variable() {
    let u = QSeries::var(&["u"], 0, 5);
    let sq = u.mul(&u);
    assert_eq!(sq.bound(), 6);
    assert_eq!(sq.truncate(5), uni("u", 5, &["0", "0", "1"]));
}

#[test]
fn geometric_inverse_truncates() {
    let a = uni("u", 4, &["1", "1"]);
    let b = uni("u", 4, &["1", "-1", "1", "-1", "1"]);
    assert_eq!(a.mul(&b), QSeries::one(&["u"], 4));
    assert_eq!(a.inverse().unwrap(), b);
}

#[test]
fn compose_odd_function() {
    let outer = uni("u", 5, &["0", "1", "0", "1/6"]);
    let inner = QSeries::var(&["t"], 0, 5).neg();
    assert_eq!(outer.compose(&inner).unwrap(), uni("t", 5, &["0", "-1", "0", "-1/6"]));
}

#[test]
fn compose_rejects_constant() {
    let outer = uni("u", 3, &["0", "1"]);
    let inner = uni("t", 3, &["1", "1"]);
    assert_eq!(outer.compose(&inner), Err(SeriesError::NonzeroConstant));
}

#[test]
fn revert_negation_and_symbolic() {
    let s = QSeries::var(&["t"], 0, 6).neg();
    assert_eq!(s.revert("u").unwrap(), QSeries::var(&["u"], 0, 6).neg());
    let s = uni("t", 7, &["0", "-1", "mu1/6", "mu2", "mu1*mu2 - mu3", "mu4", "mu1^6", "mu6"]);
    let r = s.revert("t").unwrap();
    assert_eq!(s.compose(&r).unwrap(), QSeries::var(&["t"], 0, 7));
    assert_eq!(r.revert("t").unwrap(), s);
    let bad = uni("t", 4, &["0", "mu1", "1"]);
    assert_eq!(bad.revert("u"), Err(SeriesError::NonInvertible));
}

#[test]
fn exp_log_round_trip() {
    let s = uni("u", 8, &["1", "1"]);
    assert_eq!(s.log().unwrap().exp().unwrap(), s);
    let h = uni("u", 8, &["0", "mu1", "mu2", "0", "mu4"]);
    assert_eq!(h.exp().unwrap().log().unwrap(), h);
}

#[test]
fn calculus() {
    let s = uni("u", 6, &["0", "2", "mu1", "0", "1/3"]);
    assert_eq!(s.integrate(0).differentiate(0), s);
    assert_eq!(s.differentiate(0).bound(), 5);
    assert_eq!(s.integrate(0).bound(), 7);
}

#[test]
fn shift_agrees_with_compose() {
    let sigma = uni("s", 7, &["0", "1", "mu1", "mu2", "0", "mu4", "1", "mu6"]);
    let vars = ["u", "v"];
    let v = QSeries::var(&vars, 1, 7);
    let rest = v.add(&v.mul(&v).scale_poly(&q("mu3"))).sub(&v.pow(3));
    let u = QSeries::var(&vars, 0, 7);
    let direct = sigma.compose(&u.add(&rest)).unwrap();
    let shifted = sigma.compose_shift(0, &rest).unwrap();
    assert_eq!(direct, shifted);
}

#[test]
fn valuation_aware_bounds() {
    let a = uni("u", 4, &["1", "mu1"]);
    let b = QSeries::var(&["u"], 0, 4).pow(3);
    // u has bound 4, so u^3 is exact through 6
    assert_eq!(a.mul(&b).bound(), 6);
    assert_eq!(a.add(&b).bound(), 4);
}

#[test]
fn mismatched_variables() {
    let a = QSeries::var(&["u"], 0, 3);
    let b = QSeries::var(&["v"], 0, 3);
    assert!(matches!(a.checked_mul(&b), Err(SeriesError::IncompatibleVars(..))));
    let e = a.embed(&["u", "v"]).unwrap();
    assert_eq!(e.coeff_at(&[1, 0]), QPoly::one());
}

#[test]
fn cyclotomic_scaling() {
    let s = uni("u", 6, &["0", "1", "0", "0", "1"]).to_cyc();
    let z = CycNum::zeta();
    let r = s.scale_var(0, &z).scale_var(0, &z).scale_var(0, &z);
    assert_eq!(r, s);
}

#[test]
fn json_round_trip() {
    let s = uni("t", 5, &["0", "-1", "mu1/6", "0", "mu2^2"]).embed(&["t", "w"]).unwrap();
    let j = serde_json::to_string(&s).unwrap();
    let back: SeriesJson = serde_json::from_str(&j).unwrap();
    assert_eq!(QSeries::from_json(&back).unwrap(), s);
}

#[test]
fn laurent_products() {
    let a = LaurentSeries::from_parts(2, QSeries::one(&["u"], 6));
    let b = LaurentSeries::from_series(QSeries::var(&["u"], 0, 9).pow(3));
    let c = a.mul(&b);
    assert_eq!(c.pole(), -1);
    assert_eq!(c.coeff(1), QPoly::one());
    assert_eq!(c.to_series().unwrap(), QSeries::var(&["u"], 0, 7));
}

#[test]
fn laurent_add_cancels_leading() {
    let a = LaurentSeries::from_parts(2, uni("u", 6, &["1", "mu1", "mu2"]));
    let b = LaurentSeries::from_parts(2, uni("u", 6, &["-1", "0", "1"]));
    let s = a.add(&b);
    assert_eq!(s.pole(), 1);
    assert_eq!(s.coeff(-1), q("mu1"));
    assert_eq!(s.exact_through(), 4);
    assert!(s.sub(&s).is_zero());
}

#[test]
fn laurent_derivative_and_parity() {
    // x = u^-2 + c + d u^2
    let x = LaurentSeries::from_parts(2, uni("u", 8, &["1", "0", "mu2", "0", "mu4"]));
    let dx = x.differentiate();
    assert_eq!(dx.pole(), 3);
    assert_eq!(dx.coeff(-3), q("-2"));
    assert_eq!(dx.coeff(1), q("2*mu4"));
    assert_eq!(x.negate_var(), x);
    assert_eq!(dx.negate_var(), dx.neg());
}

#[test]
fn laurent_compose_and_pole_error() {
    let x = LaurentSeries::from_parts(2, QSeries::one(&["t"], 6));
    let inner = QSeries::var(&["u"], 0, 7).neg();
    let y = x.compose(&inner).unwrap();
    assert_eq!(y.pole(), 2);
    assert_eq!(y.coeff(-2), QPoly::one());
    assert_eq!(x.to_series(), Err(SeriesError::Pole(2)));
}

fn small_series() -> impl Strategy<Value = QSeries> {
    let coeff = (-4i64..=4, prop::sample::select(vec!["1", "mu1", "mu2", "mu1*mu3"]));
    prop::collection::vec(coeff, 5).prop_map(|cs| {
        let polys = cs
            .into_iter()
            .map(|(k, m)| q(m).scale_rational(&Rational::from(k)))
            .collect::<Vec<GradedPoly<Rational>>>();
        TruncSeries::univariate("u", 4, polys)
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in small_series(), b in small_series(), c in small_series()) {
        let t = |x: QSeries| x.truncate(4);
        prop_assert_eq!(t(a.mul(&b)), t(b.mul(&a)));
        prop_assert_eq!(t(a.mul(&b).mul(&c)), t(a.mul(&b.mul(&c))));
        prop_assert_eq!(t(a.mul(&b.add(&c))), t(a.mul(&b).add(&a.mul(&c))));
        prop_assert_eq!(a.add(&b).sub(&b), a);
    }

    #[test]
    fn reversion_identity(mut s in small_series()) {
        let lin = TruncSeries::univariate("u", 4, vec![QPoly::zero(), q("3")]);
        s = s.mul_var_pow(0, 2).truncate(4).add(&lin);
        let r = s.revert("u").unwrap();
        prop_assert_eq!(r.compose(&s).unwrap(), QSeries::var(&["u"], 0, 4));
        prop_assert_eq!(r.revert("u").unwrap(), s);
    }

    #[test]
    fn integrate_then_differentiate(s in small_series()) {
        prop_assert_eq!(s.integrate(0).differentiate(0), s);
    }
}
