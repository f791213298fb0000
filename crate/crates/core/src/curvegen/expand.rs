use crate::exactnum::{CycNum, Rational};
use crate::gradedpoly::QPoly;
use crate::truncseries::{ExpVec, LaurentSeries, QSeries, ZSeries};

use super::{CurveError, CurveParams};

pub type QLaurent = LaurentSeries<Rational>;

/// `X(t)` with `x = t⁻²X(t)` on the branch `y = t⁻³`, through `t^k`.
///
/// Coefficients come from `X³ + μ₂t²X² + μ₄t⁴X + μ₆t⁶ = 1 + μ₁tX + μ₃t³`
/// solved degree by degree.
pub fn x_unit_from_t(p: &CurveParams, k: u32) -> QSeries {
    let k = k as usize;
    let mut a: Vec<QPoly> = vec![QPoly::one()];
    // coefficients of X²
    let mut x2: Vec<QPoly> = vec![QPoly::one()];
    let minus_third = Rational::new(-1, 3);
    for n in 1..=k {
        let p2 = QPoly::from_terms((1..n).flat_map(|i| a[i].mul(&a[n - i]).into_terms()));
        let p3 = p2.add(&QPoly::from_terms((1..n).flat_map(|i| a[i].mul(&x2[n - i]).into_terms())));
        let mut f = p3.sub(&p.mu1().mul(&a[n - 1]));
        if n >= 2 {
            f = f.add(&p.mu2().mul(&x2[n - 2]));
        }
        if n >= 4 {
            f = f.add(&p.mu4().mul(&a[n - 4]));
        }
        if n == 3 {
            f = f.sub(p.mu3());
        }
        if n == 6 {
            f = f.add(p.mu6());
        }
        let an = f.scale_rational(&minus_third);
        x2.push(an.scale_rational(&Rational::from(2)).add(&p2));
        a.push(an);
    }
    QSeries::univariate("t", k as u32, a)
}

/// `x(t) = t⁻²X(t)`.
pub fn x_from_t(p: &CurveParams, k: u32) -> QLaurent {
    QLaurent::from_parts(2, x_unit_from_t(p, k))
}

/// `u(t) = ∫₀ᵗ (tX′ − 2X)/(2 + μ₁tX + μ₃t³) dt`, known through `t^b`.
pub fn u_from_t(p: &CurveParams, b: u32) -> Result<QSeries, CurveError> {
    assert!(b >= 2, "u(t) needs bound at least 2");
    let x = x_unit_from_t(p, b - 1);
    let num = x.differentiate(0).mul_var_pow(0, 1).sub(&x.scale_rational(&Rational::from(2)).truncate(b - 1));
    let t3 = QSeries::from_coeffs(&["t"], b - 1, [(ExpVec::unit(0, 3), p.mu3().clone())]);
    let den = QSeries::constant(&["t"], b - 1, QPoly::from_int(2))
        .add(&x.mul_var_pow(0, 1).scale_poly(p.mu1()))
        .add(&t3);
    Ok(num.mul(&den.inverse()?).truncate(b - 1).integrate(0))
}

/// `t(u)`, the reversion of `u(t)`.
pub fn t_from_u(p: &CurveParams, b: u32) -> Result<QSeries, CurveError> {
    Ok(u_from_t(p, b)?.revert("u")?)
}

/// `x(u)` from `X(t)` and `t(u)`.
pub fn x_of_u_from(x_unit: &QSeries, t_of_u: &QSeries) -> Result<QLaurent, CurveError> {
    Ok(QLaurent::from_parts(2, x_unit.clone()).compose(t_of_u)?)
}

/// `y(u) = t(u)⁻³`.
pub fn y_of_u_from(t_of_u: &QSeries) -> Result<QLaurent, CurveError> {
    Ok(QLaurent::from_series(t_of_u.clone()).pow(-3)?)
}

pub fn x_from_u(p: &CurveParams, through: u32) -> Result<QLaurent, CurveError> {
    x_of_u_from(&x_unit_from_t(p, through + 2), &t_from_u(p, through + 3)?)
}

pub fn y_from_u(p: &CurveParams, through: u32) -> Result<QLaurent, CurveError> {
    y_of_u_from(&t_from_u(p, through + 4)?)
}

/// `σ = u·exp(−∬(x(u) − u⁻²))`, integrating from 0.
pub fn sigma_from_x(x: &QLaurent) -> Result<QSeries, CurveError> {
    if x.pole() != 2 || !x.coeff(-2).as_constant().is_some_and(|c| c.is_one()) {
        return Err(CurveError::Inconsistent("x(u) must start with u^-2".into()));
    }
    let u = x.unit();
    let regular = u
        .sub(&QSeries::one(&["u"], u.bound()))
        .div_var_pow(0, 2)
        .map_err(|_| CurveError::Inconsistent("x(u) has a u^-1 term".into()))?;
    let ii = regular.integrate(0).integrate(0);
    Ok(ii.neg().exp()?.mul_var_pow(0, 1))
}

pub fn sigma_series(p: &CurveParams, through: u32) -> Result<QSeries, CurveError> {
    let x = x_from_u(p, through.saturating_sub(3).max(1))?;
    Ok(sigma_from_x(&x)?.truncate(through))
}

/// `℘ = u⁻² − (log(σ/u))″`.
pub fn wp_from_sigma(sigma: &QSeries) -> Result<QLaurent, CurveError> {
    let l = sigma.div_var_pow(0, 1)?.log()?;
    let d2 = l.differentiate(0).differentiate(0).neg();
    let lead = QLaurent::from_parts(2, QSeries::one(&["u"], d2.bound() + 2));
    Ok(lead.add(&QLaurent::from_series(d2)))
}

pub fn wp_series(p: &CurveParams, through: u32) -> Result<QLaurent, CurveError> {
    wp_from_sigma(&sigma_series(p, through + 3)?)
}

pub fn wp_prime_series(p: &CurveParams, through: u32) -> Result<QLaurent, CurveError> {
    Ok(wp_from_sigma(&sigma_series(p, through + 4)?)?.differentiate())
}

/// Splits `f = f₀ + f₁ + f₂` by exponent residue mod 3, so that
/// `f(ζᵏt) = Σ ζ^(kr) f_r(t)`.
fn residues(f: &QSeries) -> [QSeries; 3] {
    std::array::from_fn(|r| f.select(|e| e.degree() % 3 == r as u32))
}

/// `a + bζ` from rational parts.
pub fn cyc_combine(a: &QSeries, b: &QSeries) -> ZSeries {
    a.to_cyc().add(&b.to_cyc().scale(&CycNum::zeta()))
}

/// `F(ζᵏ·t(v))` for `F` in `t`, computed with rational compositions only.
pub fn rotate_compose(f: &QSeries, t_of_u: &QSeries, k: i64) -> Result<ZSeries, CurveError> {
    let parts = residues(f);
    let mut comp = Vec::with_capacity(3);
    for part in &parts {
        comp.push(part.compose(t_of_u)?);
    }
    // ζ^(kr) for r = 0, 1, 2, reduced with ζ² = −1 − ζ
    let (re, ze) = match k.rem_euclid(3) {
        0 => (comp[0].add(&comp[1]).add(&comp[2]), QSeries::zero(&["u"], comp[0].bound())),
        1 => (comp[0].sub(&comp[2]), comp[1].sub(&comp[2])),
        _ => (comp[0].sub(&comp[1]), comp[2].sub(&comp[1])),
    };
    Ok(cyc_combine(&re, &ze))
}

/// `v★ = u(ζᵏ·t(v))` for `k = 1, 2`, as a series in `u`.
pub fn star_from(u_of_t: &QSeries, t_of_u: &QSeries, k: i64) -> Result<ZSeries, CurveError> {
    rotate_compose(u_of_t, t_of_u, k)
}

/// Which conjugate map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Star {
    One,
    Two,
}

pub fn star_series(p: &CurveParams, through: u32, which: Star) -> Result<ZSeries, CurveError> {
    let k = match which {
        Star::One => 1,
        Star::Two => 2,
    };
    star_from(&u_from_t(p, through)?, &t_from_u(p, through)?, k)
}

/// `S(v) = σ(v★)σ(v★★)/σ(v)²`, checked ζ-free. `σ(v★)` is evaluated as
/// `(σ∘u)(ζ·t(v))`.
pub fn sigma_star_from(sigma: &QSeries, u_of_t: &QSeries, t_of_u: &QSeries) -> Result<QSeries, CurveError> {
    let sigma_t = sigma.compose(u_of_t)?;
    let a = rotate_compose(&sigma_t, t_of_u, 1)?;
    let prod = a.mul(&a.conj());
    let prod = prod.to_rational().ok_or_else(|| {
        let bad = prod.terms().find(|(_, p)| p.to_rational().is_none()).map(|(e, _)| format!("{e:?}"));
        CurveError::ZetaSurvives(bad.unwrap_or_default())
    })?;
    let s2 = sigma.div_var_pow(0, 1)?.pow(2);
    Ok(prod.div_var_pow(0, 2)?.mul(&s2.inverse()?))
}

pub fn sigma_star_product(p: &CurveParams, through: u32) -> Result<QSeries, CurveError> {
    let e = super::ExpansionSet::new(p, through)?;
    Ok(e.s_star.truncate(through))
}
