//! Exact scalars: [`Rational`] and the cyclotomic extension [`CycNum`].
//!
//! [`Coeff`] abstracts over the two so that polynomials and series can be
//! generic in their coefficient field.

mod cyc;
mod rational;

use std::fmt::{Debug, Display};
use std::hash::Hash;

pub use cyc::CycNum;
pub use rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumParseError {
    #[error("not a rational literal: {0:?}")]
    Rational(String),
    #[error("not an element of Q(z): {0:?}")]
    Cyc(String),
    #[error("zero denominator")]
    ZeroDenominator,
}

/// An exact coefficient field.
pub trait Coeff:
    Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + serde::Serialize + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn recip(&self) -> Option<Self>;
    fn from_rational(r: Rational) -> Self;
    /// The value as a rational, if it lies in ℚ.
    fn to_rational(&self) -> Option<Rational>;
    /// ζ, when the field contains it.
    fn zeta() -> Option<Self>;
    /// Galois conjugation (identity on ℚ).
    fn conj(&self) -> Self;
    fn parse_literal(s: &str) -> Result<Self, NumParseError>;
    /// Whether `Display` output needs parentheses when used as a factor.
    fn is_compound(&self) -> bool {
        false
    }
    fn is_negative_rational(&self) -> bool {
        self.to_rational().is_some_and(|r| r.is_negative())
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Rational::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn recip(&self) -> Option<Self> {
        Rational::recip(self)
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn zeta() -> Option<Self> {
        None
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn parse_literal(s: &str) -> Result<Self, NumParseError> {
        s.parse()
    }
}

impl Coeff for CycNum {
    fn zero() -> Self {
        CycNum::zero()
    }
    fn one() -> Self {
        CycNum::one()
    }
    fn is_zero(&self) -> bool {
        CycNum::is_zero(self)
    }
    fn is_one(&self) -> bool {
        self.ze.is_zero() && self.re.is_one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn recip(&self) -> Option<Self> {
        CycNum::recip(self)
    }
    fn from_rational(r: Rational) -> Self {
        CycNum::from_rational(r)
    }
    fn to_rational(&self) -> Option<Rational> {
        CycNum::to_rational(self)
    }
    fn zeta() -> Option<Self> {
        Some(CycNum::zeta())
    }
    fn conj(&self) -> Self {
        CycNum::conj(self)
    }
    fn parse_literal(s: &str) -> Result<Self, NumParseError> {
        s.parse()
    }
    fn is_compound(&self) -> bool {
        !self.re.is_zero() && !self.ze.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| Rational::new(n, d))
    }

    fn cyc() -> impl Strategy<Value = CycNum> {
        (rat(), rat()).prop_map(|(a, b)| CycNum::new(a, b))
    }

    proptest! {
        #[test]
        fn rational_add_sub_round_trip(a in rat(), b in rat()) {
            prop_assert_eq!(&(&a + &b) - &b, a);
        }

        #[test]
        fn cyc_field_axioms(a in cyc(), b in cyc(), c in cyc()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.recip().unwrap(), CycNum::one());
            }
        }

        #[test]
        fn norm_is_rational(a in cyc()) {
            let p = &a * &a.conj();
            prop_assert!(p.is_rational());
            prop_assert_eq!(p.re, a.norm());
        }

        #[test]
        fn cyc_text_round_trip(a in cyc()) {
            let back: CycNum = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn rational_text_round_trip(a in rat()) {
            let back: Rational = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
