//! The quadratic field ℚ(ζ), ζ a primitive cube root of unity.
//!
//! Elements are `re + ze·ζ` and products are reduced with `ζ² = −1 − ζ`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use super::{NumParseError, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CycNum {
    pub re: Rational,
    pub ze: Rational,
}

impl CycNum {
    pub fn new(re: Rational, ze: Rational) -> Self {
        CycNum { re, ze }
    }

    pub fn from_rational(re: Rational) -> Self {
        CycNum { re, ze: Rational::zero() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    /// ζ itself.
    pub fn zeta() -> Self {
        CycNum { re: Rational::zero(), ze: Rational::one() }
    }

    /// ζ^k for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        match k.rem_euclid(3) {
            0 => Self::one(),
            1 => Self::zeta(),
            _ => CycNum { re: Rational::from(-1), ze: Rational::from(-1) },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.ze.is_zero()
    }

    /// True iff the ζ-component vanishes.
    pub fn is_rational(&self) -> bool {
        self.ze.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.re.clone())
    }

    /// Galois conjugate, ζ ↦ ζ² = −1 − ζ.
    pub fn conj(&self) -> Self {
        CycNum { re: &self.re - &self.ze, ze: -&self.ze }
    }

    /// a² − ab + b².
    pub fn norm(&self) -> Rational {
        let (a, b) = (&self.re, &self.ze);
        &(&(a * a) - &(a * b)) + &(b * b)
    }

    pub fn recip(&self) -> Option<Self> {
        let n = self.norm().recip()?;
        let c = self.conj();
        Some(CycNum { re: &c.re * &n, ze: &c.ze * &n })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycNum { re: &self.re * r, ze: &self.ze * r }
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        CycNum { re: &self.re + &rhs.re, ze: &self.ze + &rhs.ze }
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        CycNum { re: &self.re - &rhs.re, ze: &self.ze - &rhs.ze }
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if self.ze.is_zero() {
            return rhs.scale(&self.re);
        }
        if rhs.ze.is_zero() {
            return self.scale(&rhs.re);
        }
        // (a + bζ)(c + dζ) = ac − bd + (ad + bc − bd)ζ
        let bd = &self.ze * &rhs.ze;
        let re = &(&self.re * &rhs.re) - &bd;
        let ze = &(&(&self.re * &rhs.ze) + &(&self.ze * &rhs.re)) - &bd;
        CycNum { re, ze }
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { re: -&self.re, ze: -&self.ze }
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = |r: &Rational| {
            if r.is_one() {
                "z".to_string()
            } else if *r == Rational::from(-1) {
                "-z".to_string()
            } else {
                format!("{r}*z")
            }
        };
        match (self.re.is_zero(), self.ze.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}", z(&self.ze)),
            (false, false) => {
                if self.ze.is_negative() {
                    write!(f, "{} - {}", self.re, z(&-&self.ze))
                } else {
                    write!(f, "{} + {}", self.re, z(&self.ze))
                }
            }
        }
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_zeta_term(t: &str) -> Result<Rational, NumParseError> {
    let t = t.trim();
    let body = t.strip_suffix('z').ok_or_else(|| NumParseError::Cyc(t.to_string()))?;
    let body = body.trim();
    match body {
        "" | "+" => Ok(Rational::one()),
        "-" => Ok(Rational::from(-1)),
        _ => {
            let c = body.strip_suffix('*').ok_or_else(|| NumParseError::Cyc(t.to_string()))?;
            c.trim().parse()
        }
    }
}

impl FromStr for CycNum {
    type Err = NumParseError;

    /// Accepts `p/q`, `r/s*z`, `p/q + r/s*z` and `p/q - r/s*z`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if !s.ends_with('z') {
            return Ok(CycNum::from_rational(s.parse()?));
        }
        // split at the last binary + or - that is not a leading sign or part of the rational
        let bytes = s.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] == b' ' {
                split = Some(i);
                break;
            }
        }
        match split {
            None => Ok(CycNum { re: Rational::zero(), ze: parse_zeta_term(s)? }),
            Some(i) => {
                let re: Rational = s[..i].trim().parse()?;
                let mut ze = parse_zeta_term(&s[i + 1..])?;
                if bytes[i] == b'-' {
                    ze = -ze;
                }
                Ok(CycNum { re, ze })
            }
        }
    }
}

impl serde::Serialize for CycNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
