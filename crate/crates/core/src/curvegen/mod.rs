//! Curve-specific expansions: x(t), u(t), t(u), x(u), y(u), σ(u), ℘, ℘′,
//! the conjugate maps v★, v★★ and S(v) = σ(v★)σ(v★★)/σ(v)².

mod expand;
mod params;

pub use expand::{
    cyc_combine, rotate_compose,
    sigma_from_x, sigma_series, sigma_star_from, sigma_star_product, star_from, star_series, t_from_u,
    u_from_t, wp_from_sigma, wp_prime_series, wp_series, x_from_t, x_from_u, x_of_u_from, x_unit_from_t,
    y_from_u, y_of_u_from, QLaurent, Star,
};
pub use params::CurveParams;

use crate::exactnum::CycNum;
use crate::gradedpoly::QPoly;
use crate::truncseries::{QSeries, SeriesError, ZSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("a zeta component survived at {0}")]
    ZetaSurvives(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

/// Every expansion for one curve, each exact through at least `bound`.
#[derive(Clone, Debug)]
pub struct ExpansionSet {
    pub params: CurveParams,
    pub bound: u32,
    /// `x(t)` with pole 2 in `t`.
    pub x_of_t: QLaurent,
    pub u_of_t: QSeries,
    pub t_of_u: QSeries,
    pub x_of_u: QLaurent,
    pub y_of_u: QLaurent,
    pub wp: QLaurent,
    pub wp_prime: QLaurent,
    pub sigma: QSeries,
    pub star: ZSeries,
    pub starstar: ZSeries,
    /// `S(v)`, a unit series with rational coefficients.
    pub s_star: QSeries,
}

impl ExpansionSet {
    pub fn new(params: &CurveParams, bound: u32) -> Result<Self, CurveError> {
        Self::build(params, bound, true)
    }

    /// Like [`ExpansionSet::new`] but leaves `star`, `starstar` and `s_star`
    /// as zero series with bound 0.
    pub fn without_stars(params: &CurveParams, bound: u32) -> Result<Self, CurveError> {
        Self::build(params, bound, false)
    }

    fn build(params: &CurveParams, bound: u32, stars: bool) -> Result<Self, CurveError> {
        let k = bound + 3;
        let x_unit = x_unit_from_t(params, k);
        let u_of_t = u_from_t(params, k + 1)?;
        let t_of_u = u_of_t.revert("u")?;
        let x_of_u = x_of_u_from(&x_unit, &t_of_u)?;
        let y_of_u = y_of_u_from(&t_of_u)?;
        let sigma = sigma_from_x(&x_of_u)?;
        let wp = wp_from_sigma(&sigma)?;
        let wp_prime = wp.differentiate();
        let (star, starstar, s_star) = if stars {
            (
                star_from(&u_of_t, &t_of_u, 1)?,
                star_from(&u_of_t, &t_of_u, 2)?,
                sigma_star_from(&sigma, &u_of_t, &t_of_u)?,
            )
        } else {
            (ZSeries::zero(&["u"], 0), ZSeries::zero(&["u"], 0), QSeries::zero(&["u"], 0))
        };
        Ok(ExpansionSet {
            params: params.clone(),
            bound,
            x_of_t: QLaurent::from_parts(2, x_unit),
            u_of_t,
            t_of_u,
            x_of_u,
            y_of_u,
            wp,
            wp_prime,
            sigma,
            star,
            starstar,
            s_star,
        })
    }

    fn constant(&self, p: &QPoly) -> QLaurent {
        QLaurent::constant("u", self.bound + 8, p.clone())
    }

    fn sigma_laurent(&self) -> QLaurent {
        QLaurent::from_series(self.sigma.clone())
    }

    /// `x(u)^p · y(u)^ε · σ(u)^k` as a power series.
    pub fn cleared(&self, p: u32, eps: u32, k: u32) -> Result<QSeries, CurveError> {
        let l = self
            .x_of_u
            .pow(p as i32)?
            .mul(&self.y_of_u.pow(eps as i32)?)
            .mul(&self.sigma_laurent().pow(k as i32)?);
        Ok(l.to_series()?)
    }

    /// `f(x(u), y(u))` for the curve polynomial
    /// `f = y² + (μ₁x + μ₃)y − (x³ + μ₂x² + μ₄x + μ₆)`.
    pub fn curve_residual(&self) -> QLaurent {
        let p = &self.params;
        let (x, y) = (&self.x_of_u, &self.y_of_u);
        let lin = x.scale_poly(p.mu1()).add(&self.constant(p.mu3()));
        let cubic = x
            .pow(3)
            .unwrap()
            .add(&x.pow(2).unwrap().scale_poly(p.mu2()))
            .add(&x.scale_poly(p.mu4()))
            .add(&self.constant(p.mu6()));
        y.pow(2).unwrap().add(&lin.mul(y)).sub(&cubic)
    }

    /// `2y + μ₁x + μ₃`.
    pub fn wp_prime_from_coords(&self) -> QLaurent {
        let p = &self.params;
        self.y_of_u
            .scale(&2.into())
            .add(&self.x_of_u.scale_poly(p.mu1()))
            .add(&self.constant(p.mu3()))
    }

    /// Named residuals that must vanish through their exact degree.
    pub fn consistency_residuals(&self) -> Vec<(&'static str, QLaurent)> {
        let p = &self.params;
        let (x, y) = (&self.x_of_u, &self.y_of_u);
        let sig = self.sigma_laurent();
        vec![
            ("curve", self.curve_residual()),
            ("wp=x", self.wp.sub(x)),
            ("wp'=2y+mu1*x+mu3", self.wp_prime.sub(&self.wp_prime_from_coords())),
            ("x even", x.negate_var().sub(x)),
            (
                "y(-u)=-y-mu1*x-mu3",
                y.negate_var().add(y).add(&x.scale_poly(p.mu1())).add(&self.constant(p.mu3())),
            ),
            ("sigma odd", sig.negate_var().add(&sig)),
            ("wp' odd", self.wp_prime.negate_var().add(&self.wp_prime)),
        ]
    }

    /// `v + v★ + v★★`.
    pub fn star_sum(&self) -> ZSeries {
        let v = ZSeries::var(&["u"], 0, self.star.bound());
        v.add(&self.star).add(&self.starstar)
    }

    /// Whether `v★★` is the Galois conjugate of `v★`.
    pub fn stars_conjugate(&self) -> bool {
        self.star.conj() == self.starstar
    }

    pub fn zeta() -> CycNum {
        CycNum::zeta()
    }
}
