//! Sparse multivariate polynomials over the fixed symbol table, graded by
//! weight: wt(μⱼ) = −j, wt(x) = −2, wt(y) = −3, wt(g₂) = −4, wt(g₃) = −6.

mod monomial;
mod parse;
mod poly;
mod symbol;

pub use monomial::{enumerate_mu_monomials, enumerate_weighted, Monomial};
pub use parse::parse_with;
pub use poly::{Binding, GradedPoly, PolyTermJson, QPoly, Weight, ZetaPoly};
pub use symbol::{Symbol, UnknownSymbol, NSYM};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("weight of the zero polynomial is undefined")]
    ZeroWeight,
    #[error("parse error: {0}")]
    Parse(String),
}
