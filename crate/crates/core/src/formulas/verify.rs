//! Exact checks of the addition formulae.

use super::assemble::{Assembler, PairMode};
use super::golden;
use super::{poly_identity, FormulaError, IdentityReport, Residual};
use crate::curvegen::CurveParams;
use crate::exactnum::{CycNum, Rational};
use crate::gradedpoly::{QPoly, Symbol};
use crate::truncseries::{LaurentSeries, QSeries};

type ZLaurent = LaurentSeries<CycNum>;

/// `−σ(u+v)σ(u−v) = rhs·σ(u)²σ(v)²`.
pub fn verify_two_term_with(params: &CurveParams, order: u32, rhs: &QPoly) -> Result<IdentityReport, FormulaError> {
    let a = Assembler::new(params, order)?;
    let lhs = a.sigma_linear(&[1, 1])?.mul(&a.sigma_linear(&[1, -1])?).neg();
    let rhs = a.clear_poly(rhs, &[2, 2], &[0, 0])?;
    a.compare("two-term", &lhs, &rhs)
}

/// The classical two-term formula with right-hand side `x(u) − x(v)`.
pub fn verify_two_term(params: &CurveParams, order: u32) -> Result<IdentityReport, FormulaError> {
    verify_two_term_with(params, order, &golden::parse("P_u - P_v"))
}

/// `(−1)^((n−1)(n−2)/2) / Π_{j<n} j!`, the normalization for which the
/// determinant formula holds.
pub fn det_prefactor(n: usize) -> Rational {
    let f: Rational = (1..n as u32).fold(Rational::one(), |acc, j| &acc * &Rational::factorial(j));
    let sign = if ((n - 1) * (n - 2) / 2).is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    &sign / &f
}

/// Signed permutations of `0..n` from Laplace expansion along the first row.
fn laplace(n: usize) -> Vec<(i64, Vec<usize>)> {
    fn rec(cols: &[usize]) -> Vec<(i64, Vec<usize>)> {
        if cols.is_empty() {
            return vec![(1, vec![])];
        }
        let mut out = Vec::new();
        for (k, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&d| d != c).collect();
            let sign = if k % 2 == 0 { 1 } else { -1 };
            for (s, mut p) in rec(&rest) {
                p.insert(0, c);
                out.push((sign * s, p));
            }
        }
        out
    }
    rec(&(0..n).collect::<Vec<_>>())
}

/// `σ(Σuⱼ)·Π_{i<j}σ(uᵢ−uⱼ) = c·det[1, ℘, ℘′, …, ℘⁽ⁿ⁻²⁾]·Πσ(uⱼ)ⁿ` on a
/// curve with μ₁ = μ₂ = μ₃ = 0.
pub fn verify_det_formula_with(
    params: &CurveParams,
    n: usize,
    order: u32,
    prefactor: &Rational,
) -> Result<IdentityReport, FormulaError> {
    if !(2..=4).contains(&n) {
        return Err(FormulaError::Invalid(format!("determinant formula needs n in 2..=4, got {n}")));
    }
    if !(params.mu1().is_zero() && params.mu2().is_zero() && params.mu3().is_zero()) {
        return Err(FormulaError::Invalid("determinant formula needs mu1 = mu2 = mu3 = 0".into()));
    }
    let a = Assembler::new(params, order)?;
    let mut lhs = a.sigma_linear(&vec![1; n])?;
    for i in 0..n {
        for j in i + 1..n {
            let mut c = vec![0; n - i];
            c[0] = 1;
            c[j - i] = -1;
            let d = a.sigma_linear(&c)?.rename(&Assembler::vars(n)[i..]).embed(&Assembler::vars(n))?;
            lhs = lhs.mul(&d);
        }
    }
    // column c holds ℘^(c−1)(uⱼ)·σ(uⱼ)ⁿ, column 0 holds σ(uⱼ)ⁿ
    let sigma = LaurentSeries::from_series(a.set.sigma.clone()).pow(n as i32)?;
    let mut cols = vec![sigma.to_series()?];
    let mut d = a.set.wp.clone();
    for _ in 1..n {
        cols.push(d.mul(&sigma).to_series()?);
        d = d.differentiate();
    }
    let mut rhs = QSeries::zero(&Assembler::vars(n), order);
    for (sign, perm) in laplace(n) {
        let factors: Vec<QSeries> = perm.iter().enumerate().map(|(j, &c)| cols[c].rename(&[super::POINTS[j]])).collect();
        rhs = rhs.add(&a.outer(&factors).scale_rational(&Rational::from(sign)));
    }
    a.compare(&format!("det-n{n}"), &lhs, &rhs.scale_rational(prefactor))
}

pub fn verify_det_formula(params: &CurveParams, n: usize, order: u32) -> Result<IdentityReport, FormulaError> {
    verify_det_formula_with(params, n, order, &det_prefactor(n))
}

/// `−σ(u+v)σ(u+v★)σ(u+v★★) = rhs·σ(u)³σ(v)³S(v)`.
pub fn verify_n2_with(params: &CurveParams, order: u32, rhs: &QPoly) -> Result<IdentityReport, FormulaError> {
    let a = Assembler::new(params, order)?;
    let lhs = a.sigma_linear(&[1, 1])?.mul(&a.pair_in(PairMode::Star, 2, 0, 1)?).neg();
    let rhs = a.clear_poly(rhs, &[3, 3], &[0, 1])?;
    a.compare("n2", &lhs, &rhs)
}

/// The two-point formula with the ℘-form right-hand side
/// `½(℘′(u)+℘′(v)) + ½μ₁(℘(u)−℘(v))`.
pub fn verify_n2(params: &CurveParams, order: u32) -> Result<IdentityReport, FormulaError> {
    verify_n2_with(params, order, &golden::parse(golden::N2_WP_FORM))
}

/// `y(u) − y(−v)` from the series of `y` at `−v`, compared with the
/// coordinate form [`golden::N2_Y_FORM`] obtained from the parity rule;
/// both cleared by `σ(u)³σ(v)³`.
pub fn n2_parity_crosscheck(params: &CurveParams, order: u32) -> Result<IdentityReport, FormulaError> {
    let a = Assembler::new(params, order)?;
    let s3 = LaurentSeries::from_series(a.set.sigma.clone()).pow(3)?;
    let y_neg = a.set.y_of_u.negate_var().mul(&s3).to_series()?;
    let s3 = s3.to_series()?;
    let y = a.set.y_of_u.mul(&LaurentSeries::from_series(s3.clone())).to_series()?;
    let direct = a.outer(&[y, s3.rename(&["v"])]).sub(&a.outer(&[s3.clone(), y_neg.rename(&["v"])]));
    let rule = a.clear_poly(&golden::parse(golden::N2_Y_FORM), &[3, 3], &[0, 0])?;
    let mut r = a.compare("n2-parity", &direct, &rule)?;
    r.id = "n2-parity".into();
    Ok(r)
}

/// Which left-hand side `verify_n3` assembles.
pub use super::assemble::PairMode as N3Mode;

/// `σ(u+v+w)·P(u,v)P(u,w)P(v,w) = rhs·σ(u)⁵σ(v)⁵σ(w)⁵·S(v)·S(w)²`, where
/// `P(a,b) = σ(a+b★)σ(a+b★★)`. In [`N3Mode::ZetaScaled`] the stars are
/// `ζb, ζ²b` and the `S` factors are 1.
pub fn verify_n3_with(
    params: &CurveParams,
    order: u32,
    mode: N3Mode,
    rhs: &QPoly,
) -> Result<IdentityReport, FormulaError> {
    let a = Assembler::new(params, order)?;
    let mut lhs = a.sigma_linear(&[1, 1, 1])?;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        lhs = lhs.mul(&a.pair_in(mode, 3, i, j)?);
    }
    let s = match mode {
        N3Mode::Star => [0, 1, 2],
        N3Mode::ZetaScaled => [0, 0, 0],
    };
    let rhs = a.clear_poly(rhs, &[5, 5, 5], &s)?;
    a.compare("n3", &lhs, &rhs)
}

/// The three-point formula with right-hand side `Σ rᵢ`.
pub fn verify_n3(params: &CurveParams, order: u32) -> Result<IdentityReport, FormulaError> {
    verify_n3_with(params, order, N3Mode::Star, &golden::r_sum())
}

/// Specializations of the three-point formula:
/// 1 classical, 2 μ₁ = μ₂ = μ₄ = 0 with ζ-scaled arguments, 3 equianharmonic.
pub fn verify_n3_specializations(case: u32, order: u32) -> Result<IdentityReport, FormulaError> {
    verify_n3_specializations_with(case, order, None)
}

/// As [`verify_n3_specializations`]; with a seed, the series check runs with
/// the free parameters and `g2`, `g3` bound to random rationals.
pub fn verify_n3_specializations_with(
    case: u32,
    order: u32,
    seed: Option<u64>,
) -> Result<IdentityReport, FormulaError> {
    let sum = golden::r_sum();
    let (params, quoted, mode) = match case {
        1 => (CurveParams::classical(), golden::parse(golden::REM_CLASSICAL), N3Mode::Star),
        2 => (
            CurveParams::symbolic()
                .with(Symbol::Mu1, QPoly::zero())
                .with(Symbol::Mu2, QPoly::zero())
                .with(Symbol::Mu4, QPoly::zero()),
            golden::parse(golden::REM_CYCLIC),
            N3Mode::ZetaScaled,
        ),
        3 => (CurveParams::equianharmonic(), golden::parse(golden::REM_EQUIANHARMONIC), N3Mode::ZetaScaled),
        _ => return Err(FormulaError::Invalid(format!("unknown specialization case {case}"))),
    };
    let b = params.binding();
    let id = format!("n3-special-{case}");
    let mut parts = vec![poly_identity(&format!("{id}-poly"), &params, &sum.specialize(&b), &quoted.specialize(&b))];
    if case == 3 {
        let g2 = std::collections::BTreeMap::from([(Symbol::G2, QPoly::zero())]);
        let classical = golden::parse(golden::REM_CLASSICAL).specialize(&b).specialize(&g2);
        parts.push(poly_identity(&format!("{id}-from-classical"), &params, &classical, &quoted.specialize(&b)));
    }
    let (params, quoted) = match seed {
        Some(seed) => {
            let (p, g) = super::randomize(&params, seed);
            let q = quoted.specialize(&g);
            (p, q)
        }
        None => (params, quoted),
    };
    if mode == N3Mode::ZetaScaled {
        parts.push(star_collapse(&params, order)?);
    }
    let mut series = verify_n3_with(&params, order, mode, &quoted)?;
    series.id = format!("{id}-series");
    parts.push(series);
    Ok(IdentityReport::all(&id, &params, order, &parts))
}

/// `v★ = ζv`, `v★★ = ζ²v` and `S(v) = 1`.
pub fn star_collapse(params: &CurveParams, order: u32) -> Result<IdentityReport, FormulaError> {
    let a = Assembler::new(params, order)?;
    let v = QSeries::var(&["u"], 0, order).to_cyc();
    let d1 = a.set.star.truncate(order).sub(&v.scale(&CycNum::zeta()).truncate(order));
    let d2 = a.set.starstar.truncate(order).sub(&v.scale(&CycNum::zeta_pow(2)).truncate(order));
    let ds = a.set.s_star.truncate(order).sub(&QSeries::one(&["u"], order));
    let residual = if let Some((e, p)) = d1.first_nonzero().or(d2.first_nonzero()) {
        Some(Residual { degree: vec![e.degree()], poly: p.to_string(), terms: d1.len() + d2.len() })
    } else {
        ds.first_nonzero().map(|(e, p)| Residual { degree: vec![e.degree()], poly: p.to_string(), terms: ds.len() })
    };
    Ok(IdentityReport::new("star-collapse", params, order, residual))
}

/// `Σ rᵢ = Q₆f₂ + Q₄f₄` with the given `Q₆`.
pub fn verify_ideal_decomposition_with(q6: &QPoly) -> IdentityReport {
    let p = |s| golden::parse(s);
    let rhs = q6.mul(&p(golden::F2)).add(&p(golden::Q4).mul(&p(golden::F4)));
    let mut r = poly_identity("ideal", &CurveParams::symbolic(), &golden::r_sum(), &rhs);
    r.bound = 0;
    r
}

pub fn verify_ideal_decomposition() -> IdentityReport {
    verify_ideal_decomposition_with(&golden::parse(golden::Q6))
}

/// `x(ζᵏt)` as a Laurent series in `t`.
fn x_rotated(x: &LaurentSeries<crate::exactnum::Rational>, k: i64) -> ZLaurent {
    let z = CycNum::zeta_pow(k);
    let unit = x.unit().to_cyc().scale_var(0, &z);
    ZLaurent::from_parts(x.pole(), unit).scale(&CycNum::zeta_pow(-k * x.pole() as i64))
}

/// Evaluates `poly` at `x_u, x_v, x_w ↦ x(t), x(ζt), x(ζ²t)` and
/// `y_u, y_v, y_w ↦ t⁻³`, i.e. at `v = u★`, `w = u★★` in the local
/// parameter `t` of `u`. Must vanish through `t^order`.
pub fn verify_star_substitution_with(
    params: &CurveParams,
    order: u32,
    poly: &QPoly,
) -> Result<IdentityReport, FormulaError> {
    let a = Assembler::new(params, order + 8)?;
    let x = &a.set.x_of_t;
    let xs = [x_rotated(x, 0), x_rotated(x, 1), x_rotated(x, 2)];
    let through = xs.iter().map(|s| s.exact_through()).min().unwrap();
    let y = ZLaurent::from_parts(3, crate::truncseries::TruncSeries::one(&[x.var_name()], (through + 3) as u32));
    let coords = [Symbol::Xu, Symbol::Yu, Symbol::Xv, Symbol::Yv, Symbol::Xw, Symbol::Yw];
    let poly = poly.specialize(&params.binding());
    let mut acc: Option<ZLaurent> = None;
    for (m, c) in poly.split_by(|s| coords.contains(&s)) {
        let mut term = ZLaurent::constant(x.var_name(), through as u32 + 16, c.to_cyc());
        for j in 0..3 {
            term = term.mul(&xs[j].pow(m.exp(coords[2 * j]) as i32)?);
            term = term.mul(&y.pow(m.exp(coords[2 * j + 1]) as i32)?);
        }
        acc = Some(match acc {
            None => term,
            Some(s) => s.add(&term),
        });
    }
    let acc = acc.unwrap_or_else(|| ZLaurent::constant(x.var_name(), order, Default::default()));
    let residual = laurent_residual("sum r", &acc, order)?;
    Ok(IdentityReport::new("star-substitution", params, order, residual))
}

pub fn verify_star_substitution(params: &CurveParams, order: u32) -> Result<IdentityReport, FormulaError> {
    verify_star_substitution_with(params, order, &golden::r_sum())
}

fn laurent_residual<C: crate::exactnum::Coeff>(
    name: &str,
    r: &LaurentSeries<C>,
    order: u32,
) -> Result<Option<Residual>, FormulaError> {
    if r.exact_through() < order as i64 {
        return Err(FormulaError::Precision { needed: order, got: r.exact_through().max(0) as u32 });
    }
    let lo = -(r.pole().max(0) as i64);
    Ok((lo..=order as i64).find_map(|k| {
        let c = r.coeff(k);
        (!c.is_zero()).then(|| Residual { degree: vec![], poly: format!("{name}: u^{k}: {c}"), terms: 1 })
    }))
}

/// `v + v★ + v★★ = 0` and `v★★` conjugate to `v★`, through `order`.
pub fn verify_star_sum(params: &CurveParams, order: u32) -> Result<IdentityReport, FormulaError> {
    let set = crate::curvegen::ExpansionSet::new(params, order)?;
    let sum = set.star_sum();
    if sum.bound() < order {
        return Err(FormulaError::Precision { needed: order, got: sum.bound() });
    }
    let sum = sum.truncate(order);
    let residual = match sum.first_nonzero() {
        Some((e, p)) => Some(Residual { degree: vec![e.degree()], poly: p.to_string(), terms: sum.len() }),
        None if !set.stars_conjugate() => {
            Some(Residual { degree: vec![], poly: "v** is not the conjugate of v*".into(), terms: 0 })
        }
        None => None,
    };
    Ok(IdentityReport::new("star-sum", params, order, residual))
}

/// Internal consistency through `order`: the curve equation, `℘ = x`,
/// `℘′ = 2y + μ₁x + μ₃`, parities, and, when μ₁ = μ₂ = μ₃ = 0, the
/// Weierstrass equation `℘′² = 4℘³ − g₂℘ − g₃` with `g₂ = −4μ₄`, `g₃ = −4μ₆`.
pub fn verify_battery(params: &CurveParams, order: u32) -> Result<IdentityReport, FormulaError> {
    // the curve residual loses three degrees to the pole of y
    let set = crate::curvegen::ExpansionSet::without_stars(params, order + 3)?;
    let mut residuals = set.consistency_residuals();
    if params.mu1().is_zero() && params.mu2().is_zero() && params.mu3().is_zero() {
        let (wp, dwp) = (&set.wp, &set.wp_prime);
        let c = |p: &QPoly| LaurentSeries::constant("u", order + 12, p.scale_rational(&Rational::from(4)));
        let w = dwp
            .pow(2)?
            .sub(&wp.pow(3)?.scale(&Rational::from(4)))
            .sub(&wp.mul(&c(params.mu4())))
            .sub(&c(params.mu6()));
        residuals.push(("weierstrass", w));
    }
    let mut residual = None;
    for (name, r) in &residuals {
        if residual.is_none() {
            residual = laurent_residual(name, r, order)?;
        }
    }
    Ok(IdentityReport::new("battery", params, order, residual))
}
