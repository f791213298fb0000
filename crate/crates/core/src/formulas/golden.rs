//! Checked-in reference polynomials, stored as expression strings and
//! parsed on demand. `P_u`, `dP_u` stand for ℘(u), ℘′(u) and are expanded
//! to coordinates by [`wp_coordinates`].

use std::collections::HashMap;

use crate::gradedpoly::{parse_with, QPoly, Symbol};

pub const R: [&str; 9] = [
    "(y_u*y_v + y_u*y_w + y_v*y_w - x_u*x_v*x_w)*(x_u + x_v + x_w) \
     - x_u^2*x_v^2 - x_u^2*x_w^2 - x_v^2*x_w^2",
    "mu1*(x_v*x_u*y_v + 2*x_v*x_u*y_w + 2*y_w*x_u^2 + x_w*x_u*y_w - x_w^2*y_u + x_v*x_u*y_u \
     + x_w*y_v*x_u + y_v*x_u^2 + y_w*x_v^2)",
    "(x_u^2*x_v - x_u*x_w^2 + y_w*y_u)*mu1^2 - (x_v^2*x_w - y_v*y_u + x_u^2*x_v + x_u*x_w^2 \
     + 2*x_v*x_w*x_u - y_w*y_u - y_w*y_v + x_v*x_w^2 + x_u^2*x_w + x_u*x_v^2)*mu2",
    "mu1^3*y_w*x_u + (x_u*y_v + 2*y_w*x_u + x_v*y_w - x_w*y_u)*mu2*mu1 \
     + (y_v + y_w + y_u)*(x_u + x_v + x_w)*mu3",
    "-mu1^2*x_u*mu2*x_w + (x_u^2 - x_w^2 + 2*x_u*x_v + x_u*x_w)*mu3*mu1 \
     - (x_u*x_v + x_v*x_w + x_u*x_w)*mu2^2 - (x_u^2 + x_v^2 + x_w^2)*mu4",
    "mu1^2*y_w*mu3 - (y_u - y_w)*mu4*mu1 + (y_v + y_w + y_u)*mu3*mu2",
    "-mu1^2*x_u*mu4 + (x_u - x_w)*mu3*mu2*mu1 - (x_u + x_v + x_w)*(mu2*mu4 - mu6 - mu3^2)",
    "0",
    "-mu1*mu3*mu4 + (mu6 + mu3^2)*mu2 - mu4^2",
];

pub const Q6: &str = "y_w*mu1^3 - (mu4 - x_v*x_w - x_u*x_v)*mu1^2 \
    + (x_u*mu3 - mu3*x_w - x_w*y_w - x_w*y_u + 2*y_w*x_u + x_u*y_v)*mu1 \
    - (x_u*x_v + x_v*x_w + x_u*x_w)*mu2 + mu3^2 + (y_v + y_w + y_u)*mu3 - x_u*x_v^2 + mu6 \
    - x_u*x_w^2 + y_w*y_u - x_v^2*x_w + y_v*y_u - x_v*x_w^2 + y_w*y_v - x_v*x_w*x_u - x_u*mu4";

pub const Q4: &str = "(y_u + mu3)*mu1 - (mu2 + x_v + x_w)*mu1^2 + (x_v + x_w)*mu2 \
    + mu4 + x_w^2 + x_v*x_w + x_v^2";

pub const F2: &str = "x_u + x_v + x_w + mu2";

pub const F4: &str = "x_u*x_v + x_v*x_w + x_u*x_w - mu4 + mu1*y_w";

/// Two-point formula, first and second displayed forms: `y(u) − y(−v)`.
pub const N2_Y_FORM: &str = "y_u + y_v + mu1*x_v + mu3";

/// Two-point formula, ℘-form.
pub const N2_WP_FORM: &str = "1/2*(dP_u + dP_v) + mu1/2*(P_u - P_v)";

/// Equianharmonic two-point right-hand side.
pub const N2_EQUIANHARMONIC: &str = "1/2*(dP_u + dP_v)";

/// Classical specialization of the three-point right-hand side.
pub const REM_CLASSICAL: &str = "-1/16*g2^2 + 1/4*g2*(P_v^2 + P_w^2 + P_u^2) \
    - P_u^2*P_w^2 - P_v^2*P_w^2 - P_u^2*P_v^2 \
    - 1/4*(P_u + P_v + P_w)*(4*P_u*P_v*P_w + g3 - dP_u*dP_v - dP_v*dP_w - dP_u*dP_w)";

/// Three-point right-hand side for μ₁ = μ₂ = μ₄ = 0.
pub const REM_CYCLIC: &str = "(x_v + x_u + x_w)*mu6 + (x_v + x_u + x_w)*mu3^2 \
    + (y_u + y_v + y_w)*(x_v + x_u + x_w)*mu3 - x_u^2*x_w^2 - x_v^2*x_w^2 - x_u^2*x_v^2 \
    - (x_v + x_u + x_w)*(x_v*x_w*x_u - y_v*y_w - y_u*y_w - y_v*y_u)";

/// Equianharmonic three-point right-hand side.
pub const REM_EQUIANHARMONIC: &str = "1/4*(P_u + P_v + P_w)*(dP_u*dP_v + dP_v*dP_w + dP_u*dP_w \
    - g3 - 4*P_v*P_w*P_u) - P_u^2*P_v^2 - P_u^2*P_w^2 - P_v^2*P_w^2";

/// 7!·[u⁷]σ with μ̄₁ = μ₁/2 written as `mb1`.
pub const SIGMA_U7: &str = "mb1^6 + 3*mu2*mb1^4 + 6*mu3*mb1^3 + 3*mu2^2*mb1^2 + 6*mu4*mb1^2 \
    + 6*mu3*mu2*mb1 + mu2^3 + 6*mu4*mu2 + 6*mu3^2 + 24*mu6";

/// Leading coefficients of σ: `[u¹], [u³], [u⁵]`, same convention.
pub const SIGMA_LOW: [&str; 3] = ["1", "1/6*(mb1^2 + mu2)", "1/120*(mb1^4 + 2*mu2*mb1^2 + mu3*mu1 + mu2^2 + 2*mu4)"];

/// Printed coefficients of x(u), keyed by exponent.
pub const X_OF_U: [(i64, &str); 3] = [
    (-2, "1"),
    (0, "-(1/12*mu1^2 + 1/3*mu2)"),
    (2, "1/240*mu1^4 + 1/30*mu2*mu1^2 - 1/10*mu3*mu1 + 1/15*mu2^2 - 1/5*mu4"),
];

/// Printed coefficients of y(u), keyed by exponent.
pub const Y_OF_U: [(i64, &str); 3] = [(-3, "-1"), (-2, "-1/2*mu1"), (0, "1/24*mu1^3 + 1/6*mu2*mu1 - 1/2*mu3")];

/// Printed coefficients of x(t), keyed by exponent. The t³ term is absent
/// from the printed expansion and its coefficient is zero.
pub const X_OF_T: [(i64, &str); 7] = [
    (-2, "1"),
    (-1, "1/3*mu1"),
    (0, "-1/3*mu2"),
    (1, "-1/81*mu1^3 - 1/9*mu2*mu1 + 1/3*mu3"),
    (2, "1/243*mu1^4 + 1/27*mu2*mu1^2 - 1/9*mu3*mu1 + 1/3*mu2^2 - mu4"),
    (3, "0"),
    (4, "-4/6561*mu1^6 - 5/729*mu2*mu1^4 + 5/243*mu3*mu1^3 + (-2/81*mu2^2 + 1/27*mu4)*mu1^2 \
     + 2/27*mu2*mu3*mu1 - 1/9*mu3^2 - 2/81*mu2^3 + 1/9*mu4*mu2 - 1/3*mu6"),
];

/// Exact t² coefficient of x(t) for `y = t⁻³`; the printed one has
/// `1/3*mu2^2 - mu4` in place of `1/9*mu2^2 - 1/3*mu4`.
pub const X_OF_T_2_EXACT: &str = "1/243*mu1^4 + 1/27*mu2*mu1^2 - 1/9*mu3*mu1 + 1/9*mu2^2 - 1/3*mu4";

/// Macros for ℘ and ℘′ at the coordinate points:
/// `P_j ↦ x_j`, `dP_j ↦ 2y_j + μ₁x_j + μ₃`.
pub fn wp_coordinates() -> HashMap<String, QPoly> {
    let mut m = HashMap::new();
    for (p, (xs, ys)) in [
        ("u", (Symbol::Xu, Symbol::Yu)),
        ("v", (Symbol::Xv, Symbol::Yv)),
        ("w", (Symbol::Xw, Symbol::Yw)),
        ("s", (Symbol::Xs, Symbol::Ys)),
    ] {
        let x = QPoly::symbol(xs);
        let dp = QPoly::symbol(ys)
            .scale_rational(&2.into())
            .add(&QPoly::symbol(Symbol::Mu1).mul(&x))
            .add(&QPoly::symbol(Symbol::Mu3));
        m.insert(format!("P_{p}"), x);
        m.insert(format!("dP_{p}"), dp);
    }
    m
}

/// Macro `mb1 ↦ μ₁/2`.
pub fn mu1_bar() -> HashMap<String, QPoly> {
    HashMap::from([("mb1".to_string(), "1/2*mu1".parse().unwrap())])
}

/// Parses a golden expression, expanding ℘-macros and `mb1`.
pub fn parse(s: &str) -> QPoly {
    let mut m = wp_coordinates();
    m.extend(mu1_bar());
    parse_with(s, &m).unwrap_or_else(|e| panic!("golden expression {s:?}: {e}"))
}

pub fn r(i: usize) -> QPoly {
    parse(R[i])
}

/// `Σ rᵢ`.
pub fn r_sum() -> QPoly {
    (0..9).fold(QPoly::zero(), |acc, i| acc.add(&r(i)))
}
