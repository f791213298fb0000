use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use super::symbol::Symbol;
use super::PolyError;
use crate::exactnum::{Coeff, CycNum, Rational};

/// Result of [`GradedPoly::weight_of`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    Homogeneous(i32),
    Inhomogeneous,
}

/// Substitution map used by [`GradedPoly::specialize`].
pub type Binding<C> = BTreeMap<Symbol, GradedPoly<C>>;

/// Sparse polynomial over the fixed symbol table.
///
/// Terms are kept sorted by [`Monomial`] order with no zero coefficients, so
/// two equal polynomials are structurally identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedPoly<C: Coeff> {
    terms: Vec<(Monomial, C)>,
}

pub type QPoly = GradedPoly<Rational>;
pub type ZetaPoly = GradedPoly<CycNum>;

impl<C: Coeff> Default for GradedPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> GradedPoly<C> {
    pub fn zero() -> Self {
        GradedPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::constant(C::from_rational(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from(n))
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::term(Monomial::var(s), C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            GradedPoly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut v: Vec<(Monomial, C)> = terms.into_iter().collect();
        Self::normalize(&mut v);
        GradedPoly { terms: v }
    }

    fn normalize(v: &mut Vec<(Monomial, C)>) {
        v.sort_unstable_by_key(|a| a.0);
        let mut out: Vec<(Monomial, C)> = Vec::with_capacity(v.len());
        for (m, c) in v.drain(..) {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        *v = out;
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The value if the polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.as_slice() {
            [] => Some(C::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms
            .binary_search_by(|(k, _)| k.cmp(m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| C::zero())
    }

    pub fn neg(&self) -> Self {
        GradedPoly { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = a[i].1.add(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        GradedPoly { terms: out }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        GradedPoly { terms: self.terms.iter().map(|(m, k)| (*m, k.mul(c))).collect() }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&C::from_rational(r.clone()))
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        // multiplying by a monomial preserves the graded order
        GradedPoly { terms: self.terms.iter().map(|(k, d)| (k.mul(m), d.mul(c))).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let [(m, c)] = self.terms.as_slice() {
            return other.mul_term(m, c);
        }
        if let [(m, c)] = other.terms.as_slice() {
            return self.mul_term(m, c);
        }
        let mut v = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                v.push((ma.mul(mb), ca.mul(cb)));
            }
        }
        Self::normalize(&mut v);
        GradedPoly { terms: v }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Common weight of all terms.
    pub fn weight_of(&self) -> Result<Weight, PolyError> {
        let mut it = self.terms.iter().map(|(m, _)| m.weight());
        let first = it.next().ok_or(PolyError::ZeroWeight)?;
        if it.all(|w| w == first) {
            Ok(Weight::Homogeneous(first))
        } else {
            Ok(Weight::Inhomogeneous)
        }
    }

    /// True when every term has weight `w` (vacuously true for zero).
    pub fn is_homogeneous_of(&self, w: i32) -> bool {
        self.terms.iter().all(|(m, _)| m.weight() == w)
    }

    /// Substitutes the bound symbols and renormalizes.
    pub fn specialize(&self, binding: &Binding<C>) -> Self {
        if binding.is_empty() || self.is_zero() {
            return self.clone();
        }
        let mut cache: HashMap<(Symbol, u8), GradedPoly<C>> = HashMap::new();
        let mut acc: Vec<(Monomial, C)> = Vec::new();
        for (m, c) in &self.terms {
            let mut kept = Monomial::one();
            let mut factor = GradedPoly::constant(c.clone());
            for (s, e) in m.iter() {
                match binding.get(&s) {
                    None => kept = kept.mul(&Monomial::var_pow(s, e)),
                    Some(val) => {
                        let p = cache.entry((s, e)).or_insert_with(|| val.pow(e as u32));
                        factor = factor.mul(p);
                    }
                }
            }
            for (fm, fc) in factor.terms {
                acc.push((fm.mul(&kept), fc));
            }
        }
        Self::from_terms(acc)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> GradedPoly<D> {
        GradedPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn conj(&self) -> Self {
        GradedPoly { terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect() }
    }

    /// Projects to ℚ if every coefficient is rational.
    pub fn to_rational(&self) -> Option<QPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((*m, c.to_rational()?));
        }
        Some(GradedPoly { terms })
    }

    /// Splits `self = Σ key · value`, where each key collects the part of a
    /// term in the symbols selected by `pred` and the value collects the rest.
    pub fn split_by(&self, pred: impl Fn(Symbol) -> bool) -> BTreeMap<Monomial, GradedPoly<C>> {
        let mut groups: BTreeMap<Monomial, Vec<(Monomial, C)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key = m.restrict(&pred);
            let rest = m.restrict(|s| !pred(s));
            groups.entry(key).or_default().push((rest, c.clone()));
        }
        groups.into_iter().map(|(k, v)| (k, GradedPoly::from_terms(v))).collect()
    }

    /// Groups terms by the weight of their μ-part; the key is the absolute weight.
    pub fn mu_strata(&self) -> BTreeMap<u32, GradedPoly<C>> {
        let mut out: BTreeMap<u32, Vec<(Monomial, C)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let w = (-m.restrict(|s| s.is_mu()).weight()) as u32;
            out.entry(w).or_default().push((*m, c.clone()));
        }
        out.into_iter().map(|(k, v)| (k, GradedPoly::from_terms(v))).collect()
    }

    pub fn involves(&self, s: Symbol) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(s) > 0)
    }

    pub fn involves_only(&self, pred: impl Fn(Symbol) -> bool) -> bool {
        self.terms.iter().all(|(m, _)| m.involves_only(&pred))
    }

    /// First term in descending order; used for short residual summaries.
    pub fn leading(&self) -> Option<&(Monomial, C)> {
        self.terms.last()
    }

    /// Whether every rational coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.iter().all(|(_, c)| match c.to_rational() {
            Some(r) => r.is_integer(),
            None => false,
        })
    }

    pub fn to_json(&self) -> Vec<PolyTermJson> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| PolyTermJson {
                exponents: m.iter().map(|(s, e)| (s.name().to_string(), e)).collect(),
                coefficient: c.to_string(),
            })
            .collect()
    }

    pub fn from_json(entries: &[PolyTermJson]) -> Result<Self, PolyError> {
        let mut terms = Vec::with_capacity(entries.len());
        for t in entries {
            let mut pairs = Vec::new();
            for (name, &e) in &t.exponents {
                let s: Symbol = name.parse().map_err(|_| PolyError::Parse(format!("unknown symbol {name}")))?;
                pairs.push((s, e));
            }
            let c = C::parse_literal(&t.coefficient).map_err(|e| PolyError::Parse(e.to_string()))?;
            terms.push((Monomial::from_exponents(&pairs), c));
        }
        Ok(Self::from_terms(terms))
    }
}

impl QPoly {
    pub fn to_cyc(&self) -> ZetaPoly {
        GradedPoly { terms: self.terms.iter().map(|(m, c)| (*m, CycNum::from_rational(c.clone()))).collect() }
    }
}

/// One entry of the JSON polynomial format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTermJson {
    pub exponents: BTreeMap<String, u8>,
    pub coefficient: String,
}

impl<C: Coeff> Serialize for GradedPoly<C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

fn term_text<C: Coeff>(m: &Monomial, c: &C) -> String {
    if m.is_one() {
        return c.to_string();
    }
    if c.is_one() {
        return m.to_string();
    }
    if c.neg().is_one() {
        return format!("-{m}");
    }
    if c.is_compound() {
        format!("({c})*{m}")
    } else {
        format!("{c}*{m}")
    }
}

impl<C: Coeff> fmt::Display for GradedPoly<C> {
    /// Terms in descending order, e.g. `mu1^2*mu2 - 1/3*mu3 + 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let t = term_text(m, c);
            if i == 0 {
                f.write_str(&t)?;
            } else if let Some(rest) = t.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {t}")?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for GradedPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a, C: Coeff> Add<&'a GradedPoly<C>> for &'a GradedPoly<C> {
    type Output = GradedPoly<C>;
    fn add(self, rhs: &GradedPoly<C>) -> GradedPoly<C> {
        GradedPoly::add(self, rhs)
    }
}

impl<'a, C: Coeff> Sub<&'a GradedPoly<C>> for &'a GradedPoly<C> {
    type Output = GradedPoly<C>;
    fn sub(self, rhs: &GradedPoly<C>) -> GradedPoly<C> {
        GradedPoly::sub(self, rhs)
    }
}

impl<'a, C: Coeff> Mul<&'a GradedPoly<C>> for &'a GradedPoly<C> {
    type Output = GradedPoly<C>;
    fn mul(self, rhs: &GradedPoly<C>) -> GradedPoly<C> {
        GradedPoly::mul(self, rhs)
    }
}

impl<C: Coeff> Neg for &GradedPoly<C> {
    type Output = GradedPoly<C>;
    fn neg(self) -> GradedPoly<C> {
        GradedPoly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: Symbol) -> QPoly {
        QPoly::symbol(s)
    }

    #[test]
    fn product_of_weights() {
        let p = &sym(Symbol::Mu1) * &sym(Symbol::Mu6);
        assert_eq!(p.to_string(), "mu1*mu6");
        assert_eq!(p.weight_of().unwrap(), Weight::Homogeneous(-7));
    }

    #[test]
    fn difference_of_squares() {
        let (xu, xv) = (sym(Symbol::Xu), sym(Symbol::Xv));
        let p = &(&xu + &xv) * &(&xu - &xv);
        let want = &xu.pow(2) - &xv.pow(2);
        assert_eq!(p, want);
    }

    #[test]
    fn weight_cases() {
        let (m1, m2, m3) = (sym(Symbol::Mu1), sym(Symbol::Mu2), sym(Symbol::Mu3));
        let p = &(&m3 + &(&m1 * &m2)) + &m1.pow(3);
        assert_eq!(p.weight_of().unwrap(), Weight::Homogeneous(-3));
        let q = &QPoly::one() + &m1;
        assert_eq!(q.weight_of().unwrap(), Weight::Inhomogeneous);
        assert!(matches!(QPoly::zero().weight_of(), Err(PolyError::ZeroWeight)));
    }

    #[test]
    fn specialize_identity_and_substitution() {
        let p: QPoly = "mu1^2*mu4 - 3*mu6 + x_u".parse().unwrap();
        assert_eq!(p.specialize(&Binding::new()), p);
        let mut b = Binding::new();
        b.insert(Symbol::Mu1, QPoly::from_int(2));
        b.insert(Symbol::Mu6, "-1/4*g3".parse().unwrap());
        let got = p.specialize(&b);
        let want: QPoly = "4*mu4 + 3/4*g3 + x_u".parse().unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn split_by_coordinates() {
        let p: QPoly = "mu1*x_u*y_v + 2*mu3*x_u*y_v - mu2".parse().unwrap();
        let parts = p.split_by(|s| s.is_coordinate());
        assert_eq!(parts.len(), 2);
        let key = Monomial::from_exponents(&[(Symbol::Xu, 1), (Symbol::Yv, 1)]);
        assert_eq!(parts[&key].to_string(), "mu1 + 2*mu3");
    }

    #[test]
    fn json_round_trip() {
        let p: ZetaPoly = "(1 + z)*mu1^2 - 1/3*x_w + 5".parse().unwrap();
        let back = ZetaPoly::from_json(&p.to_json()).unwrap();
        assert_eq!(back, p);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly() -> impl Strategy<Value = QPoly> {
            let term = (0usize..Symbol::ALL.len(), 0u8..3, 0usize..Symbol::ALL.len(), 0u8..3, -9i64..10, 1i64..4);
            prop::collection::vec(term, 0..5).prop_map(|ts| {
                QPoly::from_terms(ts.into_iter().map(|(a, ea, b, eb, n, d)| {
                    let m = Monomial::from_exponents(&[(Symbol::ALL[a], ea), (Symbol::ALL[b], eb)]);
                    (m, Rational::new(n, d))
                }))
            })
        }

        proptest! {
            #[test]
            fn ring_axioms(a in poly(), b in poly(), c in poly()) {
                prop_assert_eq!(a.mul(&b), b.mul(&a));
                prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                prop_assert_eq!(a.add(&b).sub(&b), a.clone());
                prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            }

            #[test]
            fn text_round_trip(a in poly()) {
                let back: QPoly = a.to_string().parse().unwrap();
                prop_assert_eq!(back, a);
            }

            #[test]
            fn weights_add_under_products(a in poly(), b in poly()) {
                if let (Ok(Weight::Homogeneous(wa)), Ok(Weight::Homogeneous(wb))) = (a.weight_of(), b.weight_of()) {
                    let p = a.mul(&b);
                    prop_assert!(p.is_zero() || p.is_homogeneous_of(wa + wb));
                }
            }
        }
    }
}
