use std::collections::BTreeMap;

use crate::exactnum::Rational;
use crate::gradedpoly::{Binding, QPoly, Symbol};

/// Values of μ₁, μ₂, μ₃, μ₄, μ₆. Each is a polynomial: the symbol itself
/// when symbolic, a rational constant, or an expression such as `-1/4*g2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurveParams {
    mu: [QPoly; 5],
}

fn slot(s: Symbol) -> usize {
    Symbol::MU.iter().position(|&m| m == s).expect("not a curve parameter")
}

impl CurveParams {
    pub fn symbolic() -> Self {
        CurveParams { mu: Symbol::MU.map(QPoly::symbol) }
    }

    /// The rational curve y² = x³.
    pub fn zero() -> Self {
        CurveParams { mu: std::array::from_fn(|_| QPoly::zero()) }
    }

    /// μ₁=μ₂=μ₃=0, μ₄=−g₂/4, μ₆=−g₃/4.
    pub fn classical() -> Self {
        Self::zero()
            .with(Symbol::Mu4, "-1/4*g2".parse().unwrap())
            .with(Symbol::Mu6, "-1/4*g3".parse().unwrap())
    }

    /// μ₁=μ₂=μ₃=μ₄=0, μ₆=−g₃/4.
    pub fn equianharmonic() -> Self {
        Self::zero().with(Symbol::Mu6, "-1/4*g3".parse().unwrap())
    }

    /// `None` leaves a parameter symbolic.
    pub fn from_values(values: [Option<Rational>; 5]) -> Self {
        let mut p = Self::symbolic();
        for (s, v) in Symbol::MU.into_iter().zip(values) {
            if let Some(r) = v {
                p = p.with(s, QPoly::from_rational(r));
            }
        }
        p
    }

    pub fn with(mut self, s: Symbol, value: QPoly) -> Self {
        self.mu[slot(s)] = value;
        self
    }

    pub fn get(&self, s: Symbol) -> &QPoly {
        &self.mu[slot(s)]
    }

    pub fn mu1(&self) -> &QPoly {
        &self.mu[0]
    }
    pub fn mu2(&self) -> &QPoly {
        &self.mu[1]
    }
    pub fn mu3(&self) -> &QPoly {
        &self.mu[2]
    }
    pub fn mu4(&self) -> &QPoly {
        &self.mu[3]
    }
    pub fn mu6(&self) -> &QPoly {
        &self.mu[4]
    }

    pub fn is_symbolic(&self) -> bool {
        *self == Self::symbolic()
    }

    /// Substitution taking the symbolic parameters to these values; only
    /// non-trivial entries are listed.
    pub fn binding(&self) -> Binding<Rational> {
        Symbol::MU
            .into_iter()
            .zip(self.mu.iter())
            .filter(|(s, v)| **v != QPoly::symbol(*s))
            .map(|(s, v)| (s, v.clone()))
            .collect()
    }

    /// Human-readable binding, `"symbolic"` for free parameters.
    pub fn describe(&self) -> BTreeMap<String, String> {
        Symbol::MU
            .into_iter()
            .zip(self.mu.iter())
            .map(|(s, v)| {
                let text = if *v == QPoly::symbol(s) { "symbolic".to_string() } else { v.to_string() };
                (s.name().to_string(), text)
            })
            .collect()
    }
}
