use std::fmt;

use super::symbol::{Symbol, NSYM};

/// An exponent vector over the fixed symbol table.
///
/// Ordering is graded lexicographic: total degree first, then the exponent
/// array compared symbol by symbol in table order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    deg: u16,
    exps: [u8; NSYM],
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(s: Symbol) -> Self {
        Self::var_pow(s, 1)
    }

    pub fn var_pow(s: Symbol, e: u8) -> Self {
        let mut m = Self::default();
        m.exps[s.index()] = e;
        m.deg = e as u16;
        m
    }

    pub fn from_exponents(pairs: &[(Symbol, u8)]) -> Self {
        let mut m = Self::default();
        for &(s, e) in pairs {
            m.exps[s.index()] += e;
            m.deg += e as u16;
        }
        m
    }

    pub fn exp(&self, s: Symbol) -> u8 {
        self.exps[s.index()]
    }

    pub fn exponents(&self) -> &[u8; NSYM] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn weight(&self) -> i32 {
        self.exps
            .iter()
            .zip(Symbol::ALL)
            .map(|(&e, s)| e as i32 * s.weight())
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        Monomial { deg: self.deg + other.deg, exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// Nonzero (symbol, exponent) pairs in table order.
    pub fn iter(&self) -> impl Iterator<Item = (Symbol, u8)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (Symbol::from_index(i), e))
    }

    /// The part of the monomial in symbols accepted by `keep`.
    pub fn restrict(&self, keep: impl Fn(Symbol) -> bool) -> Monomial {
        let mut m = Monomial::default();
        for (s, e) in self.iter() {
            if keep(s) {
                m.exps[s.index()] = e;
                m.deg += e as u16;
            }
        }
        m
    }

    pub fn involves_only(&self, pred: impl Fn(Symbol) -> bool) -> bool {
        self.iter().all(|(s, _)| pred(s))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (s, e) in self.iter() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All monomials μ₁^a μ₂^b μ₃^c μ₄^d μ₆^e with a + 2b + 3c + 4d + 6e = `w`,
/// in canonical order.
pub fn enumerate_mu_monomials(w: u32) -> Vec<Monomial> {
    enumerate_weighted(&Symbol::MU, w)
}

/// All monomials in `symbols` whose weight is exactly `-w`.
pub fn enumerate_weighted(symbols: &[Symbol], w: u32) -> Vec<Monomial> {
    fn rec(symbols: &[Symbol], left: u32, cur: &mut Vec<(Symbol, u8)>, out: &mut Vec<Monomial>) {
        match symbols.split_first() {
            None => {
                if left == 0 {
                    out.push(Monomial::from_exponents(cur));
                }
            }
            Some((&s, rest)) => {
                let sw = (-s.weight()) as u32;
                let mut e = 0u32;
                while e * sw <= left {
                    if e > 0 {
                        cur.push((s, e as u8));
                    }
                    rec(rest, left - e * sw, cur, out);
                    if e > 0 {
                        cur.pop();
                    }
                    e += 1;
                    if sw == 0 {
                        break;
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(symbols, w, &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_three_candidates() {
        let ms = enumerate_mu_monomials(3);
        let names: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
        assert_eq!(names.len(), 3);
        for want in ["mu3", "mu1*mu2", "mu1^3"] {
            assert!(names.contains(&want.to_string()), "{want} missing from {names:?}");
        }
    }

    #[test]
    fn weight_zero_is_unit() {
        assert_eq!(enumerate_mu_monomials(0), vec![Monomial::one()]);
    }

    #[test]
    fn counts_match_brute_force() {
        for w in 0..=20u32 {
            let mut count = 0;
            for a in 0..=w {
                for b in 0..=w / 2 {
                    for c in 0..=w / 3 {
                        for d in 0..=w / 4 {
                            for e in 0..=w / 6 {
                                if a + 2 * b + 3 * c + 4 * d + 6 * e == w {
                                    count += 1;
                                }
                            }
                        }
                    }
                }
            }
            let ms = enumerate_mu_monomials(w);
            assert_eq!(ms.len(), count, "weight {w}");
            let mut dedup = ms.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), ms.len());
            assert!(ms.iter().all(|m| m.weight() == -(w as i32)));
        }
        // partitions of 8 into parts {1,2,3,4,6}
        assert_eq!(enumerate_mu_monomials(8).len(), 17);
    }

    #[test]
    fn graded_order() {
        let a = Monomial::var(Symbol::Mu6);
        let b = Monomial::var_pow(Symbol::Mu1, 2);
        assert!(a < b);
        assert_eq!(a.mul(&b).to_string(), "mu1^2*mu6");
        assert_eq!(a.mul(&b).weight(), -8);
    }
}
