//! Re-derivation of the right-hand sides by undetermined coefficients.

use std::collections::BTreeMap;

use serde::Serialize;

use super::assemble::{Assembler, PairMode};
use super::FormulaError;
use crate::curvegen::CurveParams;
use crate::exactnum::Rational;
use crate::gradedpoly::{enumerate_weighted, Monomial, QPoly, Symbol, Weight};
use crate::linsolve::{Eliminator, SolveError, SparseRow};
use crate::truncseries::ExpVec;

const COORDS: [(Symbol, Symbol); 4] =
    [(Symbol::Xu, Symbol::Yu), (Symbol::Xv, Symbol::Yv), (Symbol::Xw, Symbol::Yw), (Symbol::Xs, Symbol::Ys)];

#[derive(Debug, Clone, Serialize)]
pub struct DerivedRHS {
    pub n: usize,
    pub order: u32,
    pub binding: BTreeMap<String, String>,
    pub text: String,
    pub poly: QPoly,
    /// Weight when homogeneous; `−(n²−1)` is expected.
    pub weight: Option<i32>,
    pub unknowns: usize,
    pub equations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResourceReport {
    pub n: usize,
    pub order: u32,
    pub unknowns: usize,
    pub equations_estimate: u64,
    pub equations_generated: Option<usize>,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum Experimental {
    Derived(DerivedRHS),
    Resources(ResourceReport),
}

/// Sign relating the general quotient to the displayed right-hand sides:
/// the two-point formula carries an extra minus sign.
pub fn derive_sign(n: usize) -> i64 {
    if n == 2 {
        -1
    } else {
        1
    }
}

/// Symbols the curve parameters depend on.
fn param_symbols(params: &CurveParams) -> Vec<Symbol> {
    let mut out: Vec<Symbol> = Symbol::ALL
        .into_iter()
        .filter(|&s| Symbol::MU.iter().any(|&m| params.get(m).involves(s)))
        .collect();
    out.sort();
    out
}

fn params_homogeneous(params: &CurveParams) -> bool {
    Symbol::MU.iter().all(|&m| {
        let v = params.get(m);
        v.is_zero() || v.is_homogeneous_of(m.weight())
    })
}

struct Ansatz {
    coords: Vec<Monomial>,
    /// `(index into coords, parameter monomial)` per unknown.
    unknowns: Vec<(usize, Monomial)>,
}

fn ansatz(n: usize, params: &CurveParams) -> Result<Ansatz, FormulaError> {
    let target = (n * n - 1) as u32;
    let max_pole = 2 * n as u32 - 1;
    let syms = param_symbols(params);
    let homogeneous = params_homogeneous(params);
    if !homogeneous && !syms.is_empty() {
        return Err(FormulaError::Invalid("derivation needs weight-homogeneous or fully numeric parameters".into()));
    }
    let options: Vec<(u8, u8)> =
        (0..=max_pole / 2).flat_map(|p| (0..=1).map(move |e| (p as u8, e as u8))).filter(|&(p, e)| 2 * p as u32 + 3 * e as u32 <= max_pole).collect();
    let mut coords = vec![Monomial::one()];
    for &(x, y) in &COORDS[..n] {
        coords = coords
            .iter()
            .flat_map(|m| options.iter().map(move |&(p, e)| m.mul(&Monomial::from_exponents(&[(x, p), (y, e)]))))
            .collect();
    }
    coords.retain(|m| (-m.weight()) as u32 <= target);
    coords.sort();
    let mut unknowns = Vec::new();
    for (i, m) in coords.iter().enumerate() {
        let w = target - (-m.weight()) as u32;
        let monos = if homogeneous { enumerate_weighted(&syms, w) } else { vec![Monomial::one()] };
        unknowns.extend(monos.into_iter().map(|pm| (i, pm)));
    }
    Ok(Ansatz { coords, unknowns })
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Unknown count and an estimate of the number of coefficient equations.
pub fn preflight(n: usize, order: u32, params: &CurveParams) -> Result<ResourceReport, FormulaError> {
    let a = ansatz(n, params)?;
    let syms = param_symbols(params);
    let lhs_weight = 1 + n * (n - 1);
    let mut est = 0u64;
    for d in 0..=order as usize {
        let monos = if d < lhs_weight {
            0
        } else if params_homogeneous(params) {
            enumerate_weighted(&syms, (d - lhs_weight) as u32).len() as u64
        } else {
            1
        };
        est = est.saturating_add(binomial((d + n - 1) as u64, (n - 1) as u64).saturating_mul(monos));
    }
    Ok(ResourceReport {
        n,
        order,
        unknowns: a.unknowns.len(),
        equations_estimate: est,
        equations_generated: None,
        reason: "preflight".into(),
    })
}

fn derive_core(n: usize, order: u32, params: &CurveParams) -> Result<(DerivedRHS, usize), FormulaError> {
    let ans = ansatz(n, params)?;
    let asm = Assembler::new(params, order)?;
    let mut lhs = asm.sigma_linear(&vec![1; n])?;
    for i in 0..n {
        for j in i + 1..n {
            lhs = lhs.mul(&asm.pair_in(PairMode::Star, n, i, j)?);
        }
    }
    lhs = lhs.scale_rational(&Rational::from(derive_sign(n)));
    let k = vec![2 * n as u32 - 1; n];
    let s: Vec<u32> = (0..n as u32).collect();
    let mut by_coord: Vec<Vec<usize>> = vec![Vec::new(); ans.coords.len()];
    for (u, (c, _)) in ans.unknowns.iter().enumerate() {
        by_coord[*c].push(u);
    }
    let mut rows: BTreeMap<(ExpVec, Monomial), (SparseRow, Rational)> = BTreeMap::new();
    let mut got = lhs.bound();
    for (ci, m) in ans.coords.iter().enumerate() {
        if by_coord[ci].is_empty() {
            continue;
        }
        let b = asm.clear_monomial(m, &k, &s)?;
        got = got.min(b.bound());
        for (e, poly) in b.terms() {
            if e.degree() > order {
                break;
            }
            for (pm, val) in poly.terms() {
                for &u in &by_coord[ci] {
                    let key = (*e, pm.mul(&ans.unknowns[u].1));
                    rows.entry(key).or_insert_with(|| (Vec::new(), Rational::zero())).0.push((u, val.clone()));
                }
            }
        }
    }
    if got < order {
        return Err(FormulaError::Precision { needed: order, got });
    }
    for (e, poly) in lhs.terms() {
        if e.degree() > order {
            break;
        }
        for (pm, val) in poly.terms() {
            rows.entry((*e, *pm)).or_insert_with(|| (Vec::new(), Rational::zero())).1 = val.clone();
        }
    }
    let equations = rows.len();
    let mut elim = Eliminator::new(ans.unknowns.len());
    for (row, rhs) in rows.into_values() {
        elim.push(row, rhs).map_err(FormulaError::Solve)?;
    }
    let x = elim.solve().map_err(FormulaError::Solve)?;
    let mut terms = Vec::new();
    for (u, (c, pm)) in ans.unknowns.iter().enumerate() {
        if !x[u].is_zero() {
            terms.push((ans.coords[*c].mul(pm), x[u].clone()));
        }
    }
    let poly = QPoly::from_terms(terms);
    let weight = match poly.weight_of() {
        Ok(Weight::Homogeneous(w)) => Some(w),
        _ => None,
    };
    Ok((
        DerivedRHS {
            n,
            order,
            binding: params.describe(),
            text: poly.to_string(),
            poly,
            weight,
            unknowns: ans.unknowns.len(),
            equations,
        },
        equations,
    ))
}

/// Derives the right-hand side for `n = 2` or `3` points through total
/// degree `order`. Fails if the system is inconsistent or not yet determined.
pub fn derive_rhs(n: usize, order: u32, params: &CurveParams) -> Result<DerivedRHS, FormulaError> {
    if !(2..=3).contains(&n) {
        return Err(FormulaError::Invalid(format!("derive_rhs supports n = 2, 3; got {n}")));
    }
    Ok(derive_core(n, order, params)?.0)
}

/// The same procedure for four points. Requires `opt_in`; when the
/// estimated number of equations exceeds `budget`, or the system is not yet
/// determined, returns a resource report instead.
pub fn derive_rhs_experimental(
    n: usize,
    order: u32,
    params: &CurveParams,
    opt_in: bool,
    budget: u64,
) -> Result<Experimental, FormulaError> {
    if !opt_in {
        return Err(FormulaError::Invalid("the four-point derivation requires explicit opt-in".into()));
    }
    if n != 4 {
        return Err(FormulaError::Invalid(format!("experimental derivation is for n = 4; got {n}")));
    }
    let mut pre = preflight(n, order, params)?;
    if pre.equations_estimate > budget {
        pre.reason = format!("estimated {} equations exceed the budget of {budget}", pre.equations_estimate);
        return Ok(Experimental::Resources(pre));
    }
    match derive_core(n, order, params) {
        Ok((d, _)) => Ok(Experimental::Derived(d)),
        Err(FormulaError::Solve(SolveError::Underdetermined { nullity, .. })) => {
            pre.reason = format!("system underdetermined at this order (nullity {nullity})");
            Ok(Experimental::Resources(pre))
        }
        Err(e) => Err(e),
    }
}
