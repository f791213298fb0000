use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::expvec::{ExpVec, MAXV};
use super::SeriesError;
use crate::exactnum::{Coeff, CycNum, Rational};
use crate::gradedpoly::{Binding, GradedPoly, Monomial, PolyTermJson};

type CoeffMap<C> = BTreeMap<ExpVec, GradedPoly<C>>;

/// A power series in up to four expansion variables, known exactly through
/// total degree `bound`.
///
/// Products use the valuation-aware bound `min(Ba + vb, Bb + va)`, which is
/// never smaller than `min(Ba, Bb)`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries<C: Coeff> {
    vars: Vec<String>,
    bound: u32,
    coeffs: CoeffMap<C>,
}

/// JSON form of a series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub vars: Vec<String>,
    pub bound: u32,
    pub coeffs: Vec<SeriesTermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTermJson {
    pub exponents: Vec<u32>,
    pub poly: Vec<PolyTermJson>,
}

fn mul_raw<C: Coeff>(a: &CoeffMap<C>, b: &CoeffMap<C>, cap: u32) -> CoeffMap<C> {
    let mut acc: HashMap<ExpVec, HashMap<Monomial, C>> = HashMap::new();
    for (ea, pa) in a {
        if ea.degree() > cap {
            break;
        }
        let room = cap - ea.degree();
        for (eb, pb) in b {
            if eb.degree() > room {
                break;
            }
            let slot = acc.entry(ea.add(eb)).or_default();
            for (ma, ca) in pa.terms() {
                for (mb, cb) in pb.terms() {
                    let c = ca.mul(cb);
                    match slot.entry(ma.mul(mb)) {
                        Entry::Occupied(mut o) => {
                            let s = o.get().add(&c);
                            *o.get_mut() = s;
                        }
                        Entry::Vacant(v) => {
                            v.insert(c);
                        }
                    }
                }
            }
        }
    }
    acc.into_iter()
        .filter_map(|(e, v)| {
            let p = GradedPoly::from_terms(v.into_iter().filter(|(_, c)| !c.is_zero()));
            (!p.is_zero()).then_some((e, p))
        })
        .collect()
}

fn add_into<C: Coeff>(acc: &mut CoeffMap<C>, e: ExpVec, p: &GradedPoly<C>) {
    if p.is_zero() {
        return;
    }
    match acc.get_mut(&e) {
        Some(q) => {
            let s = q.add(p);
            if s.is_zero() {
                acc.remove(&e);
            } else {
                *q = s;
            }
        }
        None => {
            acc.insert(e, p.clone());
        }
    }
}

fn rational_series<C: Coeff>(var: &str, bound: u32, f: impl Fn(u32) -> Rational) -> TruncSeries<C> {
    let cs = (0..=bound).map(|k| GradedPoly::from_rational(f(k))).collect();
    TruncSeries::univariate(var, bound, cs)
}

impl<C: Coeff> TruncSeries<C> {
    fn raw(vars: Vec<String>, bound: u32, coeffs: CoeffMap<C>) -> Self {
        assert!(vars.len() <= MAXV, "at most {MAXV} expansion variables");
        TruncSeries { vars, bound, coeffs }
    }

    fn names(vars: &[&str]) -> Vec<String> {
        vars.iter().map(|s| s.to_string()).collect()
    }

    pub fn zero(vars: &[&str], bound: u32) -> Self {
        Self::raw(Self::names(vars), bound, BTreeMap::new())
    }

    pub fn constant(vars: &[&str], bound: u32, c: GradedPoly<C>) -> Self {
        Self::from_coeffs(vars, bound, [(ExpVec::zero(), c)])
    }

    pub fn one(vars: &[&str], bound: u32) -> Self {
        Self::constant(vars, bound, GradedPoly::one())
    }

    /// The expansion variable `vars[i]` itself.
    pub fn var(vars: &[&str], i: usize, bound: u32) -> Self {
        Self::from_coeffs(vars, bound, [(ExpVec::unit(i, 1), GradedPoly::one())])
    }

    /// Collects (possibly repeated) terms, dropping degrees above `bound`.
    pub fn from_coeffs(
        vars: &[&str],
        bound: u32,
        terms: impl IntoIterator<Item = (ExpVec, GradedPoly<C>)>,
    ) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, p) in terms {
            if e.degree() <= bound {
                add_into(&mut coeffs, e, &p);
            }
        }
        Self::raw(Self::names(vars), bound, coeffs)
    }

    /// `Σ cs[k]·var^k`.
    pub fn univariate(var: &str, bound: u32, cs: Vec<GradedPoly<C>>) -> Self {
        let terms = cs.into_iter().enumerate().map(|(k, p)| (ExpVec::unit(0, k as u32), p));
        Self::from_coeffs(&[var], bound, terms)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn coeff(&self, e: &ExpVec) -> GradedPoly<C> {
        self.coeffs.get(e).cloned().unwrap_or_default()
    }

    pub fn coeff_at(&self, exps: &[u32]) -> GradedPoly<C> {
        self.coeff(&ExpVec::new(exps))
    }

    /// Coefficient of `var^k` in a univariate series.
    pub fn nth(&self, k: u32) -> GradedPoly<C> {
        self.coeff(&ExpVec::unit(0, k))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &GradedPoly<C>)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Zero through the bound.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest degree with a nonzero coefficient, or `bound + 1` for zero.
    pub fn valuation(&self) -> u32 {
        self.coeffs.keys().next().map_or(self.bound + 1, |e| e.degree())
    }

    pub fn first_nonzero(&self) -> Option<(&ExpVec, &GradedPoly<C>)> {
        self.coeffs.iter().next()
    }

    pub fn constant_term(&self) -> GradedPoly<C> {
        self.coeff(&ExpVec::zero())
    }

    /// Lowers the bound to `min(bound, b)`.
    pub fn truncate(&self, b: u32) -> Self {
        if b >= self.bound {
            return self.clone();
        }
        let coeffs = self.coeffs.iter().filter(|(e, _)| e.degree() <= b).map(|(e, p)| (*e, p.clone())).collect();
        Self::raw(self.vars.clone(), b, coeffs)
    }

    fn check_vars(&self, o: &Self) -> Result<(), SeriesError> {
        if self.vars == o.vars {
            Ok(())
        } else {
            Err(SeriesError::IncompatibleVars(self.vars.clone(), o.vars.clone()))
        }
    }

    fn require_univariate(&self) -> Result<(), SeriesError> {
        if self.vars.len() == 1 {
            Ok(())
        } else {
            Err(SeriesError::NotUnivariate(self.vars.len()))
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, SeriesError> {
        self.check_vars(o)?;
        let bound = self.bound.min(o.bound);
        let mut coeffs = self.truncate(bound).coeffs;
        for (e, p) in o.coeffs.range(..) {
            if e.degree() <= bound {
                add_into(&mut coeffs, *e, p);
            }
        }
        Ok(Self::raw(self.vars.clone(), bound, coeffs))
    }

    /// Panics on mismatched variables; see [`Self::checked_add`].
    pub fn add(&self, o: &Self) -> Self {
        self.checked_add(o).expect("series addition")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_polys(|p| p.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map_polys(|p| p.scale(c))
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&C::from_rational(r.clone()))
    }

    /// Multiplies every coefficient by the polynomial `p`.
    pub fn scale_poly(&self, p: &GradedPoly<C>) -> Self {
        self.map_polys(|q| q.mul(p))
    }

    fn map_polys(&self, f: impl Fn(&GradedPoly<C>) -> GradedPoly<C>) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter_map(|(e, p)| {
                let q = f(p);
                (!q.is_zero()).then_some((*e, q))
            })
            .collect();
        Self::raw(self.vars.clone(), self.bound, coeffs)
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, SeriesError> {
        self.check_vars(o)?;
        let bound = (self.bound + o.valuation()).min(o.bound + self.valuation());
        Ok(Self::raw(self.vars.clone(), bound, mul_raw(&self.coeffs, &o.coeffs, bound)))
    }

    /// Panics on mismatched variables; see [`Self::checked_mul`].
    pub fn mul(&self, o: &Self) -> Self {
        self.checked_mul(o).expect("series multiplication")
    }

    /// Product computed only through degree `cap` (and the natural bound).
    pub fn mul_capped(&self, o: &Self, cap: u32) -> Self {
        self.truncate(cap).mul(&o.truncate(cap)).truncate(cap)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc: Option<Self> = None;
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc.unwrap_or_else(|| Self::raw(self.vars.clone(), self.bound, Self::unit_map()))
    }

    fn unit_map() -> CoeffMap<C> {
        BTreeMap::from([(ExpVec::zero(), GradedPoly::one())])
    }

    fn invertible_constant(&self) -> Result<C, SeriesError> {
        self.constant_term()
            .as_constant()
            .and_then(|c| c.recip())
            .ok_or(SeriesError::NonInvertible)
    }

    /// Multiplicative inverse; the constant term must be a nonzero scalar.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let inv = self.invertible_constant()?;
        let h = self.scale(&inv).sub(&Self::raw(self.vars.clone(), self.bound, Self::unit_map()));
        let geo = rational_series::<C>("x", self.bound, |k| Rational::from(if k % 2 == 0 { 1 } else { -1 }));
        Ok(geo.compose(&h)?.scale(&inv))
    }

    /// `self(inner)` for a univariate `self`; `inner` may have any variables.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        self.require_univariate()?;
        if !inner.constant_term().is_zero() {
            return Err(SeriesError::NonzeroConstant);
        }
        let vi = inner.valuation() as u64;
        let target = (vi * (self.bound as u64 + 1) - 1).min(inner.bound as u64) as u32;
        let kmax = self.bound.min(target / vi as u32);
        let mut acc: CoeffMap<C> = BTreeMap::new();
        for k in (0..=kmax).rev() {
            // the partial sum is multiplied by inner k more times
            let cap = target.saturating_sub(k * vi as u32);
            acc = mul_raw(&acc, &inner.coeffs, cap);
            add_into(&mut acc, ExpVec::zero(), &self.nth(k));
        }
        Ok(Self::raw(inner.vars.clone(), target, acc))
    }

    /// `self(x_i + rest)` expanded as `Σ_k self^(k)(x_i)/k! · rest^k`, where
    /// `x_i` is variable `i` of `rest`.
    pub fn compose_shift(&self, i: usize, rest: &Self) -> Result<Self, SeriesError> {
        self.require_univariate()?;
        if !rest.constant_term().is_zero() {
            return Err(SeriesError::NonzeroConstant);
        }
        let target = self.bound.min(rest.bound);
        let vr = rest.valuation().max(1);
        let mut power = Self::unit_map();
        let mut acc: CoeffMap<C> = BTreeMap::new();
        for k in 0..=self.bound.min(target / vr) {
            let mut dk: CoeffMap<C> = BTreeMap::new();
            for n in k..=self.bound {
                let c = self.nth(n);
                if c.is_zero() || n - k > target {
                    continue;
                }
                let b = Rational::binomial(n, k);
                dk.insert(ExpVec::unit(i, n - k), c.scale_rational(&b));
            }
            for (e, p) in mul_raw(&dk, &power, target) {
                add_into(&mut acc, e, &p);
            }
            power = mul_raw(&power, &rest.coeffs, target);
        }
        Ok(Self::raw(rest.vars.clone(), target, acc))
    }

    /// Replaces variable `i` by the univariate series `inner`, which must
    /// have zero constant term; the name of its variable is ignored.
    pub fn substitute(&self, i: usize, inner: &Self) -> Result<Self, SeriesError> {
        inner.require_univariate()?;
        if !inner.constant_term().is_zero() {
            return Err(SeriesError::NonzeroConstant);
        }
        let target = self.bound.min(inner.bound);
        let kmax = self.coeffs.keys().map(|e| e.get(i)).max().unwrap_or(0);
        let mut powers: Vec<CoeffMap<C>> = vec![Self::unit_map()];
        for k in 1..=kmax {
            powers.push(mul_raw(&powers[k as usize - 1], &inner.coeffs, target));
        }
        let mut acc: CoeffMap<C> = BTreeMap::new();
        for (e, p) in &self.coeffs {
            let k = e.get(i);
            let rest = e.lower(i, k).expect("exponent present");
            for (ej, q) in &powers[k as usize] {
                let j = ej.get(0);
                if rest.degree() + j > target {
                    break;
                }
                add_into(&mut acc, rest.raise(i, j), &p.mul(q));
            }
        }
        Ok(Self::raw(self.vars.clone(), target, acc))
    }

    /// The terms whose exponent satisfies `pred`, with the same bound.
    pub fn select(&self, pred: impl Fn(&ExpVec) -> bool) -> Self {
        let coeffs = self.coeffs.iter().filter(|(e, _)| pred(e)).map(|(e, p)| (*e, p.clone())).collect();
        Self::raw(self.vars.clone(), self.bound, coeffs)
    }

    /// Compositional inverse of a univariate series with zero constant term
    /// and invertible linear coefficient, by Lagrange inversion. The result
    /// is a series in `out_var`.
    pub fn revert(&self, out_var: &str) -> Result<Self, SeriesError> {
        self.require_univariate()?;
        if !self.constant_term().is_zero() {
            return Err(SeriesError::NonzeroConstant);
        }
        if self.bound == 0 {
            return Err(SeriesError::NonInvertible);
        }
        let q = self.div_var_pow(0, 1)?;
        let phi = q.inverse()?;
        let mut power = phi.clone();
        let mut cs = vec![GradedPoly::zero()];
        for k in 1..=self.bound {
            cs.push(power.nth(k - 1).scale_rational(&Rational::new(1, k as i64)));
            if k < self.bound {
                power = power.mul(&phi);
            }
        }
        Ok(Self::univariate(out_var, self.bound, cs))
    }

    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.constant_term().is_zero() {
            return Err(SeriesError::NonzeroConstant);
        }
        let e = rational_series::<C>("x", self.bound, |k| Rational::factorial(k).recip().unwrap());
        e.compose(self)
    }

    /// Logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.constant_term().as_constant().is_some_and(|c| c.is_one()) {
            return Err(SeriesError::NonInvertible);
        }
        let h = self.sub(&Self::raw(self.vars.clone(), self.bound, Self::unit_map()));
        let l = rational_series::<C>("x", self.bound, |k| match k {
            0 => Rational::zero(),
            k if k % 2 == 1 => Rational::new(1, k as i64),
            k => Rational::new(-1, k as i64),
        });
        l.compose(&h)
    }

    /// ∂/∂x_i; the bound drops by one.
    pub fn differentiate(&self, i: usize) -> Self {
        assert!(self.bound >= 1, "differentiating a series known only through degree 0");
        let coeffs = self
            .coeffs
            .iter()
            .filter_map(|(e, p)| {
                let k = e.get(i);
                let lower = e.lower(i, 1)?;
                Some((lower, p.scale_rational(&Rational::from(k as i64))))
            })
            .collect();
        Self::raw(self.vars.clone(), self.bound - 1, coeffs)
    }

    /// ∫ dx_i from 0; the bound rises by one.
    pub fn integrate(&self, i: usize) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(e, p)| (e.raise(i, 1), p.scale_rational(&Rational::new(1, e.get(i) as i64 + 1))))
            .collect();
        Self::raw(self.vars.clone(), self.bound + 1, coeffs)
    }

    pub fn mul_var_pow(&self, i: usize, k: u32) -> Self {
        let coeffs = self.coeffs.iter().map(|(e, p)| (e.raise(i, k), p.clone())).collect();
        Self::raw(self.vars.clone(), self.bound + k, coeffs)
    }

    pub fn div_var_pow(&self, i: usize, k: u32) -> Result<Self, SeriesError> {
        let bad = || SeriesError::NotDivisible { var: self.vars[i].clone(), k };
        if self.bound < k {
            return Err(bad());
        }
        let mut coeffs = BTreeMap::new();
        for (e, p) in &self.coeffs {
            coeffs.insert(e.lower(i, k).ok_or_else(bad)?, p.clone());
        }
        Ok(Self::raw(self.vars.clone(), self.bound - k, coeffs))
    }

    /// Substitutes `x_i ↦ c·x_i`.
    pub fn scale_var(&self, i: usize, c: &C) -> Self {
        let mut pows = vec![C::one()];
        let coeffs = self
            .coeffs
            .iter()
            .filter_map(|(e, p)| {
                let k = e.get(i) as usize;
                while pows.len() <= k {
                    let next = pows.last().unwrap().mul(c);
                    pows.push(next);
                }
                let q = p.scale(&pows[k]);
                (!q.is_zero()).then_some((*e, q))
            })
            .collect();
        Self::raw(self.vars.clone(), self.bound, coeffs)
    }

    /// Substitutes `x_i ↦ −x_i`.
    pub fn negate_var(&self, i: usize) -> Self {
        self.scale_var(i, &C::one().neg())
    }

    /// Re-expresses the series over a superset of its variables.
    pub fn embed(&self, new_vars: &[&str]) -> Result<Self, SeriesError> {
        let map = self
            .vars
            .iter()
            .map(|v| new_vars.iter().position(|n| n == v).ok_or_else(|| SeriesError::UnknownVar(v.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        let coeffs = self.coeffs.iter().map(|(e, p)| (e.remap(&map), p.clone())).collect();
        Ok(Self::raw(Self::names(new_vars), self.bound, coeffs))
    }

    /// Renames the variables positionally.
    pub fn rename(&self, vars: &[&str]) -> Self {
        assert_eq!(vars.len(), self.vars.len());
        Self::raw(Self::names(vars), self.bound, self.coeffs.clone())
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&GradedPoly<C>) -> GradedPoly<D>) -> TruncSeries<D> {
        let coeffs = self
            .coeffs
            .iter()
            .filter_map(|(e, p)| {
                let q = f(p);
                (!q.is_zero()).then_some((*e, q))
            })
            .collect();
        TruncSeries::raw(self.vars.clone(), self.bound, coeffs)
    }

    pub fn specialize(&self, b: &Binding<C>) -> Self {
        self.map_polys(|p| p.specialize(b))
    }

    pub fn conj(&self) -> Self {
        self.map_polys(|p| p.conj())
    }

    /// Projects to ℚ if every coefficient is rational.
    pub fn to_rational(&self) -> Option<TruncSeries<Rational>> {
        let mut coeffs = BTreeMap::new();
        for (e, p) in &self.coeffs {
            coeffs.insert(*e, p.to_rational()?);
        }
        Some(TruncSeries::raw(self.vars.clone(), self.bound, coeffs))
    }

    /// First coefficient that is not homogeneous of weight `w - degree`,
    /// for an object of weight `w` (every expansion variable has weight 1).
    pub fn weight_violation(&self, w: i32) -> Option<ExpVec> {
        self.coeffs
            .iter()
            .find(|(e, p)| !p.is_homogeneous_of(w - e.degree() as i32))
            .map(|(e, _)| *e)
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            vars: self.vars.clone(),
            bound: self.bound,
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, p)| SeriesTermJson { exponents: e.exps(self.vars.len()), poly: p.to_json() })
                .collect(),
        }
    }

    pub fn from_json(j: &SeriesJson) -> Result<Self, SeriesError> {
        let vars: Vec<&str> = j.vars.iter().map(|s| s.as_str()).collect();
        let mut terms = Vec::new();
        for t in &j.coeffs {
            let p = GradedPoly::from_json(&t.poly).map_err(|e| SeriesError::Json(e.to_string()))?;
            terms.push((ExpVec::new(&t.exponents), p));
        }
        Ok(Self::from_coeffs(&vars, j.bound, terms))
    }
}

impl TruncSeries<Rational> {
    pub fn to_cyc(&self) -> TruncSeries<CycNum> {
        self.map_coeffs(|p| p.to_cyc())
    }
}

impl<C: Coeff> fmt::Display for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, p) in &self.coeffs {
            write!(f, "({p})")?;
            for (i, v) in self.vars.iter().enumerate() {
                match e.get(i) {
                    0 => {}
                    1 => write!(f, "*{v}")?,
                    k => write!(f, "*{v}^{k}")?,
                }
            }
            f.write_str(" + ")?;
        }
        match self.vars.as_slice() {
            [v] => write!(f, "O({v}^{})", self.bound + 1),
            _ => write!(f, "O(deg {})", self.bound + 1),
        }
    }
}

impl<C: Coeff> fmt::Debug for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<C: Coeff> Serialize for TruncSeries<C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}
