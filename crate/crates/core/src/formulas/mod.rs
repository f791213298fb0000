//! Verification and re-derivation of the addition formulae as exact
//! identities between pole-cleared truncated power series.

mod assemble;
mod derive;
pub mod golden;
mod hurwitz;
mod verify;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::curvegen::{CurveError, CurveParams};
use crate::exactnum::Rational;
use crate::gradedpoly::{Binding, QPoly, Symbol};
use crate::linsolve::SolveError;
use crate::truncseries::SeriesError;

pub use assemble::{Assembler, PairMode, POINTS};
pub use derive::{derive_rhs, derive_rhs_experimental, preflight, DerivedRHS, Experimental, ResourceReport};
pub use hurwitz::{check_hurwitz, rhs_integrality, to_mu1_bar};
pub use verify::*;

#[derive(Debug, thiserror::Error)]
pub enum FormulaError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("linear system: {0}")]
    Solve(SolveError),
    #[error("insufficient precision: identity needs degree {needed}, series exact through {got}")]
    Precision { needed: u32, got: u32 },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// The first nonzero coefficient of a residual.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Residual {
    /// Multi-degree of the offending coefficient; empty for polynomial identities.
    pub degree: Vec<u32>,
    pub poly: String,
    /// Number of nonzero coefficients in the residual.
    pub terms: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub binding: BTreeMap<String, String>,
    pub bound: u32,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<Residual>,
}

impl IdentityReport {
    pub fn new(id: &str, params: &CurveParams, bound: u32, residual: Option<Residual>) -> Self {
        IdentityReport {
            id: id.to_string(),
            binding: params.describe(),
            bound,
            verdict: if residual.is_none() { Verdict::Pass } else { Verdict::Fail },
            residual,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Combines sub-checks: passes iff all pass, keeping the first residual.
    pub fn all(id: &str, params: &CurveParams, bound: u32, parts: &[IdentityReport]) -> Self {
        let residual = parts.iter().find_map(|r| {
            r.residual.clone().map(|mut res| {
                res.poly = format!("[{}] {}", r.id, res.poly);
                res
            })
        });
        Self::new(id, params, bound, residual)
    }
}

/// Compares two polynomials.
pub fn poly_identity(id: &str, params: &CurveParams, lhs: &QPoly, rhs: &QPoly) -> IdentityReport {
    let diff = lhs.sub(rhs);
    let residual =
        (!diff.is_zero()).then(|| Residual { degree: vec![], poly: diff.to_string(), terms: diff.len() });
    IdentityReport::new(id, params, 0, residual)
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let n: i64 = rng.random_range(-9..=9);
    let d: i64 = rng.random_range(1..=5);
    Rational::new(n, d)
}

/// All five parameters bound to seeded random rationals.
pub fn random_params(seed: u64) -> CurveParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    CurveParams::from_values(std::array::from_fn(|_| Some(random_rational(&mut rng))))
}

/// Binds the parameters that are free in `base` to seeded random rationals,
/// and replaces `g2`, `g3` by random rationals. Returns the new parameters
/// and the values chosen for `g2`, `g3`.
pub fn randomize(base: &CurveParams, seed: u64) -> (CurveParams, Binding<Rational>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g2 = QPoly::from_rational(random_rational(&mut rng));
    let g3 = QPoly::from_rational(random_rational(&mut rng));
    let gb = BTreeMap::from([(Symbol::G2, g2), (Symbol::G3, g3)]);
    let mut p = base.clone();
    for s in Symbol::MU {
        let v = base.get(s);
        let nv = if *v == QPoly::symbol(s) { QPoly::from_rational(random_rational(&mut rng)) } else { v.specialize(&gb) };
        p = p.with(s, nv);
    }
    (p, gb)
}
