use serde::Serialize;

use super::series::{SeriesJson, TruncSeries};
use super::SeriesError;
use crate::exactnum::{Coeff, Rational};
use crate::gradedpoly::{Binding, GradedPoly};

/// `var^(-pole) · unit` in a single variable, with `unit(0) ≠ 0`.
///
/// The zero value keeps `pole = 0` and an empty unit whose bound records
/// the degree through which the value is known to vanish.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentSeries<C: Coeff> {
    pole: i32,
    unit: TruncSeries<C>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LaurentJson {
    pub pole: i32,
    pub unit: SeriesJson,
}

impl<C: Coeff> LaurentSeries<C> {
    /// `var^(-pole) · s`, normalized so that the unit is invertible.
    pub fn from_parts(pole: i32, s: TruncSeries<C>) -> Self {
        assert_eq!(s.nvars(), 1, "Laurent series live in one variable");
        let v = s.valuation();
        if v > s.bound() {
            let through = s.bound() as i64 - pole as i64;
            let b = u32::try_from(through.max(0)).unwrap_or(0);
            let var = s.vars()[0].clone();
            return LaurentSeries { pole: 0, unit: TruncSeries::zero(&[var.as_str()], b) };
        }
        let unit = if v == 0 { s } else { s.div_var_pow(0, v).expect("valuation divides") };
        LaurentSeries { pole: pole - v as i32, unit }
    }

    /// The constant `p`, known through degree `through`.
    pub fn constant(var: &str, through: u32, p: GradedPoly<C>) -> Self {
        Self::from_parts(0, TruncSeries::constant(&[var], through, p))
    }

    pub fn from_series(s: TruncSeries<C>) -> Self {
        Self::from_parts(0, s)
    }

    pub fn var_name(&self) -> &str {
        &self.unit.vars()[0]
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    /// Pole order; negative values are zeros of that order.
    pub fn pole(&self) -> i32 {
        self.pole
    }

    pub fn unit(&self) -> &TruncSeries<C> {
        &self.unit
    }

    /// Highest exponent whose coefficient is known.
    pub fn exact_through(&self) -> i64 {
        self.unit.bound() as i64 - self.pole as i64
    }

    /// Coefficient of `var^k`.
    pub fn coeff(&self, k: i64) -> GradedPoly<C> {
        let j = k + self.pole as i64;
        if j < 0 || self.is_zero() {
            GradedPoly::zero()
        } else {
            self.unit.nth(j as u32)
        }
    }

    fn same_var(&self, o: &Self) -> Result<(), SeriesError> {
        if self.var_name() == o.var_name() {
            Ok(())
        } else {
            Err(SeriesError::IncompatibleVars(self.unit.vars().to_vec(), o.unit.vars().to_vec()))
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_var(o).expect("Laurent multiplication");
        if self.is_zero() || o.is_zero() {
            let through = match (self.is_zero(), o.is_zero()) {
                (true, true) => self.exact_through() + o.exact_through() + 1,
                (true, false) => self.exact_through() - o.pole as i64,
                _ => o.exact_through() - self.pole as i64,
            };
            return self.zero_through(through);
        }
        LaurentSeries { pole: self.pole + o.pole, unit: self.unit.mul(&o.unit) }
    }

    fn zero_through(&self, through: i64) -> Self {
        let var = self.var_name().to_string();
        LaurentSeries { pole: 0, unit: TruncSeries::zero(&[var.as_str()], through.max(0) as u32) }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_var(o).expect("Laurent addition");
        let through = self.exact_through().min(o.exact_through());
        let p = self.pole.max(o.pole);
        let lift = |l: &Self| l.unit.mul_var_pow(0, (p - l.pole) as u32);
        let bound = u32::try_from(through + p as i64).unwrap_or(0);
        let sum = lift(self).truncate(bound).add(&lift(o).truncate(bound));
        Self::from_parts(p, sum)
    }

    pub fn neg(&self) -> Self {
        LaurentSeries { pole: self.pole, unit: self.unit.neg() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_parts(self.pole, self.unit.scale(c))
    }

    pub fn scale_poly(&self, p: &GradedPoly<C>) -> Self {
        Self::from_parts(self.pole, self.unit.scale_poly(p))
    }

    pub fn inverse(&self) -> Result<Self, SeriesError> {
        Ok(LaurentSeries { pole: -self.pole, unit: self.unit.inverse()? })
    }

    pub fn pow(&self, k: i32) -> Result<Self, SeriesError> {
        if k < 0 {
            return self.inverse()?.pow(-k);
        }
        if self.is_zero() && k > 0 {
            return Ok(self.zero_through(self.exact_through() * k as i64 + k as i64 - 1));
        }
        Ok(LaurentSeries { pole: self.pole * k, unit: self.unit.pow(k as u32) })
    }

    /// d/dvar.
    pub fn differentiate(&self) -> Self {
        if self.is_zero() {
            return self.zero_through(self.exact_through() - 1);
        }
        // d(v^-p U) = v^(-p-1) (−p U + v U')
        let p = self.pole;
        let du = self.unit.differentiate(0).mul_var_pow(0, 1);
        let body = self.unit.scale_rational(&Rational::from(-(p as i64))).add(&du);
        Self::from_parts(p + 1, body)
    }

    /// Substitutes `var ↦ −var`.
    pub fn negate_var(&self) -> Self {
        let u = self.unit.negate_var(0);
        let u = if self.pole % 2 != 0 { u.neg() } else { u };
        LaurentSeries { pole: self.pole, unit: u }
    }

    /// `self(inner)` where `inner` has valuation exactly 1; the result is in
    /// the variable of `inner`.
    pub fn compose(&self, inner: &TruncSeries<C>) -> Result<Self, SeriesError> {
        if inner.nvars() != 1 {
            return Err(SeriesError::NotUnivariate(inner.nvars()));
        }
        if inner.valuation() != 1 {
            return Err(SeriesError::NonInvertible);
        }
        let tau = inner.div_var_pow(0, 1)?;
        let var = inner.vars()[0].clone();
        if self.is_zero() {
            let z = TruncSeries::zero(&[var.as_str()], self.unit.bound());
            return Ok(LaurentSeries { pole: 0, unit: z });
        }
        let body = self.unit.compose(inner)?;
        let scale = tau.pow(self.pole.unsigned_abs());
        let scale = if self.pole > 0 { scale.inverse()? } else { scale };
        Ok(Self::from_parts(self.pole, body.mul(&scale)))
    }

    /// The value as a power series; fails if there is a genuine pole.
    pub fn to_series(&self) -> Result<TruncSeries<C>, SeriesError> {
        if self.is_zero() {
            return Ok(self.unit.clone());
        }
        if self.pole > 0 {
            return Err(SeriesError::Pole(self.pole));
        }
        Ok(self.unit.mul_var_pow(0, (-self.pole) as u32))
    }

    /// Terms of negative exponent, as `(exponent, coefficient)` pairs.
    pub fn principal_part(&self) -> Vec<(i64, GradedPoly<C>)> {
        (-(self.pole as i64)..0).map(|k| (k, self.coeff(k))).filter(|(_, p)| !p.is_zero()).collect()
    }

    pub fn truncate_through(&self, k: i64) -> Self {
        if k >= self.exact_through() {
            return self.clone();
        }
        let b = u32::try_from(k + self.pole as i64).unwrap_or(0);
        LaurentSeries { pole: self.pole, unit: self.unit.truncate(b) }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&GradedPoly<C>) -> GradedPoly<D>) -> LaurentSeries<D> {
        LaurentSeries::from_parts(self.pole, self.unit.map_coeffs(f))
    }

    pub fn specialize(&self, b: &Binding<C>) -> Self {
        LaurentSeries::from_parts(self.pole, self.unit.specialize(b))
    }

    pub fn to_json(&self) -> LaurentJson {
        LaurentJson { pole: self.pole, unit: self.unit.to_json() }
    }
}

impl LaurentSeries<Rational> {
    pub fn to_cyc(&self) -> LaurentSeries<crate::exactnum::CycNum> {
        LaurentSeries { pole: self.pole, unit: self.unit.to_cyc() }
    }
}

impl<C: Coeff> std::fmt::Display for LaurentSeries<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let v = self.var_name();
        for k in -(self.pole.max(0) as i64)..=self.exact_through() {
            let c = self.coeff(k);
            if c.is_zero() {
                continue;
            }
            match k {
                0 => write!(f, "({c}) + ")?,
                1 => write!(f, "({c})*{v} + ")?,
                k => write!(f, "({c})*{v}^{k} + ")?,
            }
        }
        write!(f, "O({v}^{})", self.exact_through() + 1)
    }
}
