//! Integrality of the σ expansion and of the right-hand sides.

use super::{derive_rhs, golden, FormulaError, IdentityReport, Residual};
use crate::curvegen::{sigma_series, CurveParams};
use crate::exactnum::Rational;
use crate::gradedpoly::{QPoly, Symbol};

/// Rewrites `μ₁ᵃ ↦ 2ᵃ·μ̄₁ᵃ`, keeping the symbol `mu1` for `μ̄₁`.
pub fn to_mu1_bar(p: &QPoly) -> QPoly {
    QPoly::from_terms(p.terms().iter().map(|(m, c)| (*m, c * &Rational::from(2).pow(m.exp(Symbol::Mu1) as i32))))
}

/// `n!·[uⁿ]σ ∈ ℤ[μ̄₁, μ₂, μ₃, μ₄, μ₆]` and `n!·[uⁿ]σ² ∈ ℤ[μ]` for `n ≤ max`.
pub fn check_hurwitz(params: &CurveParams, max: u32) -> Result<IdentityReport, FormulaError> {
    let sigma = sigma_series(params, max)?;
    if sigma.bound() < max {
        return Err(FormulaError::Precision { needed: max, got: sigma.bound() });
    }
    let sq = sigma.mul(&sigma);
    let mut residual = None;
    for n in 1..=max {
        let f = Rational::factorial(n);
        let a = to_mu1_bar(&sigma.nth(n).scale_rational(&f));
        let b = sq.nth(n).scale_rational(&f);
        for (label, p) in [("sigma", a), ("sigma^2", b)] {
            if residual.is_none() && !p.has_integer_coefficients() {
                residual = Some(Residual { degree: vec![n], poly: format!("{label}: {p}"), terms: p.len() });
            }
        }
    }
    Ok(IdentityReport::new("hurwitz", params, max, residual))
}

/// Whether `Σ rᵢ` and the derived two-point right-hand side lie in `ℤ[μ][x, y]`.
pub fn rhs_integrality(order: u32) -> Result<IdentityReport, FormulaError> {
    let params = CurveParams::symbolic();
    let derived = derive_rhs(2, order, &params)?.poly;
    let residual = [("sum r", golden::r_sum()), ("derived n=2", derived)]
        .into_iter()
        .find(|(_, p)| !p.has_integer_coefficients())
        .map(|(l, p)| Residual { degree: vec![], poly: format!("{l}: {p}"), terms: p.len() });
    Ok(IdentityReport::new("rhs-integrality", &params, order, residual))
}
