//! Truncated multivariate power series with polynomial coefficients, and
//! univariate Laurent series built on them.

mod expvec;
mod laurent;
mod series;

pub use expvec::{ExpVec, MAXV};
pub use laurent::{LaurentJson, LaurentSeries};
pub use series::{SeriesJson, SeriesTermJson, TruncSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("incompatible variables: {0:?} vs {1:?}")]
    IncompatibleVars(Vec<String>, Vec<String>),
    #[error("expected a series in one variable, found {0}")]
    NotUnivariate(usize),
    #[error("inner series has a nonzero constant term")]
    NonzeroConstant,
    #[error("leading coefficient is not an invertible constant")]
    NonInvertible,
    #[error("series is not divisible by {var}^{k}")]
    NotDivisible { var: String, k: u32 },
    #[error("series has a pole of order {0}")]
    Pole(i32),
    #[error("unknown variable {0}")]
    UnknownVar(String),
    #[error("bad series JSON: {0}")]
    Json(String),
}

pub type QSeries = TruncSeries<crate::exactnum::Rational>;
pub type ZSeries = TruncSeries<crate::exactnum::CycNum>;

#[cfg(test)]
mod tests;
