//! Building pole-cleared multivariate series from the univariate expansions.

use std::cell::{OnceCell, RefCell};
use std::collections::HashMap;

use super::{FormulaError, IdentityReport, Residual};
use crate::curvegen::{cyc_combine, CurveError, CurveParams, ExpansionSet};
use crate::exactnum::Rational;
use crate::gradedpoly::{Monomial, QPoly, Symbol};
use crate::truncseries::{ExpVec, QSeries, ZSeries};

/// Series variable names for the points, matching the coordinate symbols
/// `x_u, y_u, x_v, …`.
pub const POINTS: [&str; 4] = ["u", "v", "w", "s"];

const COORDS: [(Symbol, Symbol); 4] =
    [(Symbol::Xu, Symbol::Yu), (Symbol::Xv, Symbol::Yv), (Symbol::Xw, Symbol::Yw), (Symbol::Xs, Symbol::Ys)];

fn is_coord(s: Symbol) -> bool {
    COORDS.iter().any(|&(x, y)| s == x || s == y)
}

/// How `σ(a + b★)σ(a + b★★)` is formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairMode {
    /// Through the conjugate-point expansions `b★ = u(ζ·t(b))`.
    Star,
    /// As `σ(a + ζb)σ(a + ζ²b)`; valid when μ₁ = μ₂ = μ₄ = 0.
    ZetaScaled,
}

/// Expansions for one curve, with caches for the factors used when
/// assembling identities through total degree `order`.
pub struct Assembler {
    pub set: ExpansionSet,
    pub order: u32,
    pairs: [OnceCell<QSeries>; 2],
    factors: RefCell<HashMap<(u32, u32, u32, u32), QSeries>>,
}

fn zeta_norm(a: &ZSeries) -> Result<QSeries, FormulaError> {
    let prod = a.mul(&a.conj());
    prod.to_rational().ok_or_else(|| {
        let bad = prod.terms().find(|(_, p)| p.to_rational().is_none());
        FormulaError::Curve(CurveError::ZetaSurvives(format!("{:?}", bad.map(|(e, _)| *e))))
    })
}

/// `F(a, ζb)` for `F` in two variables, as rational parts `re + ζ·ze`.
fn rotate_second(f: &QSeries) -> (QSeries, QSeries) {
    let parts: [QSeries; 3] = std::array::from_fn(|r| f.select(|e| e.get(1) % 3 == r as u32));
    (parts[0].sub(&parts[2]), parts[1].sub(&parts[2]))
}

impl Assembler {
    pub fn new(params: &CurveParams, order: u32) -> Result<Self, FormulaError> {
        Ok(Assembler {
            set: ExpansionSet::new(params, order)?,
            order,
            pairs: [OnceCell::new(), OnceCell::new()],
            factors: RefCell::new(HashMap::new()),
        })
    }

    pub fn params(&self) -> &CurveParams {
        &self.set.params
    }

    pub fn vars(n: usize) -> Vec<&'static str> {
        POINTS[..n].to_vec()
    }

    /// `σ(Σ cⱼ·uⱼ)` in `n` variables, with `c₀ = 1`.
    pub fn sigma_linear(&self, coeffs: &[i64]) -> Result<QSeries, FormulaError> {
        assert_eq!(coeffs.first(), Some(&1), "leading coefficient must be 1");
        let vars = Self::vars(coeffs.len());
        let mut rest = QSeries::zero(&vars, self.order);
        for (j, &c) in coeffs.iter().enumerate().skip(1) {
            rest = rest.add(&QSeries::var(&vars, j, self.order).scale_rational(&Rational::from(c)));
        }
        Ok(self.set.sigma.compose_shift(0, &rest)?)
    }

    /// `σ(a + b★)σ(a + b★★)` in the variables `(a, b)`, checked ζ-free.
    pub fn pair(&self, mode: PairMode) -> Result<&QSeries, FormulaError> {
        let cell = &self.pairs[mode as usize];
        if let Some(p) = cell.get() {
            return Ok(p);
        }
        let ab = ["a", "b"];
        let (re, ze) = match mode {
            PairMode::Star => {
                // σ(a + u(ζt)) at t = t(b)
                let shift = self.set.u_of_t.rename(&["b"]).embed(&ab)?;
                let g = self.set.sigma.compose_shift(0, &shift)?;
                let (re, ze) = rotate_second(&g);
                (re.substitute(1, &self.set.t_of_u)?, ze.substitute(1, &self.set.t_of_u)?)
            }
            PairMode::ZetaScaled => {
                let p = self.params();
                if !(p.mu1().is_zero() && p.mu2().is_zero() && p.mu4().is_zero()) {
                    return Err(FormulaError::Invalid("zeta-scaled pairs need mu1 = mu2 = mu4 = 0".into()));
                }
                let g = self.set.sigma.compose_shift(0, &QSeries::var(&ab, 1, self.order))?;
                rotate_second(&g)
            }
        };
        let p = zeta_norm(&cyc_combine(&re, &ze))?;
        Ok(cell.get_or_init(|| p))
    }

    /// The pair factor for points `i < j` embedded in `n` variables.
    pub fn pair_in(&self, mode: PairMode, n: usize, i: usize, j: usize) -> Result<QSeries, FormulaError> {
        Ok(self.pair(mode)?.rename(&[POINTS[i], POINTS[j]]).embed(&Self::vars(n))?)
    }

    /// `x^p·y^ε·σ^k·S^s` in the variable `u`.
    pub fn factor(&self, p: u32, eps: u32, k: u32, s: u32) -> Result<QSeries, FormulaError> {
        if let Some(f) = self.factors.borrow().get(&(p, eps, k, s)) {
            return Ok(f.clone());
        }
        let mut f = self.set.cleared(p, eps, k)?;
        if s > 0 {
            f = f.mul(&self.set.s_star.pow(s));
        }
        self.factors.borrow_mut().insert((p, eps, k, s), f.clone());
        Ok(f)
    }

    /// Product of univariate series, the `j`-th placed in variable `j`.
    pub fn outer(&self, factors: &[QSeries]) -> QSeries {
        let n = factors.len();
        let vars = Self::vars(n);
        let vals: Vec<u32> = factors.iter().map(|f| f.valuation()).collect();
        let total: u32 = vals.iter().sum();
        let bound = factors
            .iter()
            .zip(&vals)
            .map(|(f, v)| f.bound().saturating_add(total - v))
            .min()
            .unwrap_or(self.order)
            .min(self.order);
        let mut acc: Vec<(ExpVec, QPoly)> = vec![(ExpVec::zero(), QPoly::one())];
        for (j, f) in factors.iter().enumerate() {
            let rest_min: u32 = vals[j + 1..].iter().sum();
            let mut next = Vec::new();
            for (e, p) in &acc {
                for (fe, q) in f.terms() {
                    let d = fe.degree();
                    if e.degree() + d + rest_min > bound {
                        break;
                    }
                    next.push((e.raise(j, d), p.mul(q)));
                }
            }
            acc = next;
        }
        QSeries::from_coeffs(&vars, bound, acc)
    }

    /// `poly · Π σ(uⱼ)^{kⱼ} S(uⱼ)^{sⱼ}` with `x_j, y_j ↦ x(uⱼ), y(uⱼ)`.
    /// The polynomial is first specialized to the curve parameters.
    pub fn clear_poly(&self, poly: &QPoly, k: &[u32], s: &[u32]) -> Result<QSeries, FormulaError> {
        let n = k.len();
        let poly = poly.specialize(&self.params().binding());
        let mut acc = QSeries::zero(&Self::vars(n), self.order);
        for (m, coeff) in poly.split_by(is_coord) {
            acc = acc.add(&self.clear_monomial(&m, k, s)?.scale_poly(&coeff));
        }
        Ok(acc)
    }

    /// A coordinate monomial cleared as in [`Self::clear_poly`].
    pub fn clear_monomial(&self, m: &Monomial, k: &[u32], s: &[u32]) -> Result<QSeries, FormulaError> {
        let n = k.len();
        if COORDS[n..].iter().any(|&(x, y)| m.exp(x) > 0 || m.exp(y) > 0) {
            return Err(FormulaError::Invalid(format!("{m} involves a point beyond the first {n}")));
        }
        let factors = (0..n)
            .map(|j| {
                let (x, y) = COORDS[j];
                self.factor(m.exp(x) as u32, m.exp(y) as u32, k[j], s[j]).map(|f| f.rename(&[POINTS[j]]))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.outer(&factors))
    }

    /// Compares `lhs` and `rhs` through total degree `order`.
    pub fn compare(&self, id: &str, lhs: &QSeries, rhs: &QSeries) -> Result<IdentityReport, FormulaError> {
        let got = lhs.bound().min(rhs.bound());
        if got < self.order {
            return Err(FormulaError::Precision { needed: self.order, got });
        }
        let diff = lhs.truncate(self.order).sub(&rhs.truncate(self.order));
        let residual = diff.first_nonzero().map(|(e, p)| Residual {
            degree: e.exps(diff.nvars()),
            poly: p.to_string(),
            terms: diff.len(),
        });
        Ok(IdentityReport::new(id, self.params(), self.order, residual))
    }
}
