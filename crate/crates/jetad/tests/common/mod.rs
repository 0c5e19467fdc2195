//! Shared helpers for the integration suites: scale-protected deviation,
//! closed-form oracles, and the expression corpus.

#![allow(dead_code)]

use jetad::taylor::{taylor_coeffs, DerivSeq, ElementaryFn};
use jetad::Jet;
use rand::Rng;

/// Scale-protected relative deviation: absolute near zero, relative once
/// magnitudes exceed one.
pub fn rel_dev(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1.0f64.max(a.abs()).max(b.abs())
}

pub fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
    assert!(
        rel_dev(a, b) <= tol,
        "{what}: {a} vs {b} (deviation {:.3e} > {tol:.1e})",
        rel_dev(a, b)
    );
}

pub fn assert_jets_close(a: &Jet, b: &Jet, tol: f64, what: &str) {
    assert_eq!(a.order(), b.order(), "{what}: order mismatch");
    for (i, (x, y)) in a.coeffs().iter().zip(b.coeffs()).enumerate() {
        assert!(
            rel_dev(*x, *y) <= tol,
            "{what}: coefficient {i}: {x} vs {y} (deviation {:.3e} > {tol:.1e})",
            rel_dev(*x, *y)
        );
    }
}

// ---------------------------------------------------------------------
// Closed forms for f(x) = ln(x) * cos(1/x^2), written straight from the
// derivative formulas. These are the independent target values the jet
// engine must reproduce.
// ---------------------------------------------------------------------

pub fn worked_f(x: f64) -> f64 {
    x.ln() * (1.0 / (x * x)).cos()
}

pub fn worked_f1(x: f64) -> f64 {
    let (l, s, c) = lsc(x);
    2.0 / x.powi(3) * l * s + c / x
}

pub fn worked_f2(x: f64) -> f64 {
    let (l, s, c) = lsc(x);
    -4.0 / x.powi(6) * l * c - 6.0 / x.powi(4) * l * s + 4.0 / x.powi(4) * s
        - c / (x * x)
}

pub fn worked_f3(x: f64) -> f64 {
    let (l, s, c) = lsc(x);
    -8.0 / x.powi(9) * l * s + 36.0 / x.powi(7) * l * c + 24.0 / x.powi(5) * l * s
        - 12.0 / x.powi(7) * c
        - 24.0 / x.powi(5) * s
        + 2.0 / x.powi(3) * c
}

/// Jet coefficients of the worked example at the seed with coefficients
/// `(1, 0, 0)`.
pub fn worked_coeffs_standard_seed(x: f64) -> [f64; 3] {
    let (l, s, c) = lsc(x);
    [
        2.0 / x.powi(3) * l * s + c / x,
        -2.0 / x.powi(6) * l * c - 3.0 / x.powi(4) * l * s + 2.0 / x.powi(4) * s
            - c / (2.0 * x * x),
        -4.0 / (3.0 * x.powi(9)) * l * s + 6.0 / x.powi(7) * l * c + 4.0 / x.powi(5) * l * s
            - 2.0 / x.powi(7) * c
            - 4.0 / x.powi(5) * s
            + c / (3.0 * x.powi(3)),
    ]
}

/// Jet coefficients of the worked example at the seed with coefficients
/// `(1, 1, 1)`.
pub fn worked_coeffs_ones_seed(x: f64) -> [f64; 3] {
    let (l, s, c) = lsc(x);
    [
        2.0 / x.powi(3) * l * s + c / x,
        -2.0 / x.powi(6) * l * c + (2.0 / x.powi(3) - 3.0 / x.powi(4)) * l * s
            + 2.0 / x.powi(4) * s
            + (-1.0 / (2.0 * x * x) + 1.0 / x) * c,
        -4.0 / (3.0 * x.powi(9)) * l * s
            + (6.0 / x.powi(7) - 4.0 / x.powi(6)) * l * c
            + (4.0 / x.powi(5) - 6.0 / x.powi(4) + 2.0 / x.powi(3)) * l * s
            - 2.0 / x.powi(7) * c
            + (2.0 / x.powi(4) - 3.0 / x.powi(5)) * s
            + (-1.0 / x.powi(5) + 2.0 / x.powi(4)) * s
            + (1.0 / (3.0 * x.powi(3)) - 1.0 / (x * x) + 1.0 / x) * c,
    ]
}

fn lsc(x: f64) -> (f64, f64, f64) {
    let inv_sq = 1.0 / (x * x);
    (x.ln(), inv_sq.sin(), inv_sq.cos())
}

// ---------------------------------------------------------------------
// Order-3 extension coefficients of the elementary functions, as explicit
// formulas in (x, a1, a2, a3).
// ---------------------------------------------------------------------

pub fn recip_extension(x: f64, a1: f64, a2: f64, a3: f64) -> [f64; 4] {
    [
        1.0 / x,
        -a1 / x.powi(2),
        a1 * a1 / x.powi(3) - a2 / x.powi(2),
        -a1.powi(3) / x.powi(4) + 2.0 * a1 * a2 / x.powi(3) - a3 / x.powi(2),
    ]
}

pub fn exp_extension(x: f64, a1: f64, a2: f64, a3: f64) -> [f64; 4] {
    let e = x.exp();
    [
        e,
        a1 * e,
        (a1 * a1 / 2.0 + a2) * e,
        (a1.powi(3) / 6.0 + a1 * a2 + a3) * e,
    ]
}

pub fn sin_extension(x: f64, a1: f64, a2: f64, a3: f64) -> [f64; 4] {
    let (s, c) = (x.sin(), x.cos());
    [
        s,
        a1 * c,
        -a1 * a1 / 2.0 * s + a2 * c,
        -a1.powi(3) / 6.0 * c - a1 * a2 * s + a3 * c,
    ]
}

pub fn cos_extension(x: f64, a1: f64, a2: f64, a3: f64) -> [f64; 4] {
    let (s, c) = (x.sin(), x.cos());
    [
        c,
        -a1 * s,
        -a1 * a1 / 2.0 * c - a2 * s,
        a1.powi(3) / 6.0 * s - a1 * a2 * c - a3 * s,
    ]
}

pub fn ln_extension(x: f64, a1: f64, a2: f64, a3: f64) -> [f64; 4] {
    [
        x.ln(),
        a1 / x,
        -a1 * a1 / (2.0 * x * x) + a2 / x,
        a1.powi(3) / (3.0 * x.powi(3)) - a1 * a2 / (x * x) + a3 / x,
    ]
}

pub fn arctan_extension(x: f64, a1: f64, a2: f64, a3: f64) -> [f64; 4] {
    let d = 1.0 + x * x;
    [
        x.atan(),
        a1 / d,
        -a1 * a1 * x / (d * d) + a2 / d,
        a1.powi(3) * (3.0 * x * x - 1.0) / (3.0 * d.powi(3)) - 2.0 * a1 * a2 * x / (d * d)
            + a3 / d,
    ]
}

// ---------------------------------------------------------------------
// Derivative combinators used as independent oracles.
// ---------------------------------------------------------------------

/// General Leibniz rule: `(fg)^(k) = sum_i C(k, i) f^(i) g^(k-i)`.
pub fn leibniz_product_derivs(f: &[f64], g: &[f64]) -> Vec<f64> {
    assert_eq!(f.len(), g.len());
    let n = f.len();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = 0.0;
        let mut binom = 1.0;
        for i in 0..=k {
            acc += binom * f[i] * g[k - i];
            binom = binom * (k - i) as f64 / (i + 1) as f64;
        }
        out.push(acc);
    }
    out
}

/// Third-order chain rule: derivatives of `f(g(x))` from the derivatives
/// of `f` at `g(x)` and of `g` at `x`.
pub fn compose_derivs_order3(f_at_gx: &[f64], g_at_x: &[f64]) -> [f64; 4] {
    let (f1, f2, f3) = (f_at_gx[1], f_at_gx[2], f_at_gx[3]);
    let (g1, g2, g3) = (g_at_x[1], g_at_x[2], g_at_x[3]);
    [
        f_at_gx[0],
        f1 * g1,
        f2 * g1 * g1 + f1 * g2,
        f3 * g1.powi(3) + 3.0 * f2 * g1 * g2 + f1 * g3,
    ]
}

// ---------------------------------------------------------------------
// Elementary-function sampling for the randomized conformance suites.
// ---------------------------------------------------------------------

/// The pool of elementary functions the conformance suites draw from.
pub fn elementary_pool() -> Vec<ElementaryFn> {
    vec![
        ElementaryFn::Recip,
        ElementaryFn::Exp,
        ElementaryFn::Sin,
        ElementaryFn::Cos,
        ElementaryFn::Ln,
        ElementaryFn::Arctan,
        ElementaryFn::PowInt(2),
        ElementaryFn::PowInt(3),
        ElementaryFn::PowInt(-2),
        ElementaryFn::PowReal(1.5),
        ElementaryFn::PowReal(-0.7),
    ]
}

/// Whether `x` sits inside `f`'s domain with enough margin for stable
/// derivative values (keeps the randomized suites away from poles).
pub fn comfortably_in_domain(f: ElementaryFn, x: f64) -> bool {
    if !x.is_finite() || x.abs() > 10.0 {
        return false;
    }
    match f {
        ElementaryFn::Recip | ElementaryFn::PowInt(_) => x.abs() >= 0.2,
        ElementaryFn::Ln | ElementaryFn::PowReal(_) => x >= 0.2,
        ElementaryFn::Exp => x.abs() <= 3.0,
        ElementaryFn::Sin | ElementaryFn::Cos | ElementaryFn::Arctan => true,
    }
}

/// Draws an elementary function and a point comfortably in its domain.
pub fn sample_fn_and_point<R: Rng>(rng: &mut R) -> (ElementaryFn, f64) {
    let pool = elementary_pool();
    loop {
        let f = pool[rng.gen_range(0..pool.len())];
        let x = rng.gen_range(-4.0..4.0);
        if comfortably_in_domain(f, x) {
            return (f, x);
        }
    }
}

/// Derivative data of `f` at `x`, panicking on domain violations (callers
/// sample valid points).
pub fn derivs_of(f: ElementaryFn, x: f64, order: usize) -> DerivSeq {
    taylor_coeffs(f, x, order).expect("sampled point is in domain")
}

// ---------------------------------------------------------------------
// Expression corpus: 25 composite expressions with well-scaled smooth
// points.
// ---------------------------------------------------------------------

pub const CORPUS: [(&str, f64); 25] = [
    ("x^2", 3.0),
    ("x^3-2*x+1", 1.5),
    ("exp(x)", 1.0),
    ("ln(x)", 2.0),
    ("sin(x)", 0.7),
    ("cos(x)", 1.1),
    ("arctan(x)", 0.5),
    ("sqrt(x)", 4.0),
    ("1/x", 2.0),
    ("ln(x)*cos(1/x^2)", 2.0),
    ("exp(sin(x))", 0.9),
    ("sin(exp(x))", 0.3),
    ("exp(x)*sin(x)", 1.2),
    ("ln(1+x^2)", 1.5),
    ("arctan(x^2)", 0.8),
    ("x*exp(-x)", 1.3),
    ("sqrt(1+x^2)", 2.0),
    ("cos(x)/x", 1.5),
    ("sin(x)^2", 0.6),
    ("1/(1+x^2)", 0.7),
    ("exp(x^2)*arctan(x)", 0.5),
    ("ln(x)/x^2", 3.0),
    ("exp(1/x)", 2.0),
    ("sin(x)*cos(x^2)", 0.9),
    ("sqrt(x)*ln(x)", 3.0),
];
