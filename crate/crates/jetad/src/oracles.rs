//! Slow, independent reference implementations.
//!
//! These exist to check the production paths, not to be fast: jet
//! inversion through determinant ratios, multiplication through a full
//! dense polynomial product, and derivatives through central finite
//! differences with Richardson extrapolation. Tests compare the production
//! code against these; the CLI's check mode uses the finite-difference
//! oracle at run time.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::expr::{eval_real, EvalError, Expr};
use crate::jet::{Jet, JetError};
use crate::math;

/// Inverts a jet coefficient-by-coefficient as determinant ratios.
///
/// Coefficient `i` of the inverse is `det(M_i) / a0^(n+1)`, where `M` is
/// the lower-triangular Toeplitz matrix of the jet's coefficients and
/// `M_i` is `M` with column `i` replaced by the first unit vector.
/// Determinants are taken by LU factorization with partial pivoting. This
/// is O(n^4); the production path solves the same system by forward
/// substitution in O(n^2).
pub fn invert_cramer(x: &Jet) -> Result<Jet, JetError> {
    let a0 = x.constant_term();
    if a0 == 0.0 {
        return Err(JetError::NotInvertible);
    }
    let n = x.order();
    let dim = n + 1;
    let denominator = math::powi(a0, dim as i32);
    let mut coeffs = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut m = vec![vec![0.0; dim]; dim];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = if c == i {
                    if r == 0 {
                        1.0
                    } else {
                        0.0
                    }
                } else if r >= c {
                    x.coeffs()[r - c]
                } else {
                    0.0
                };
            }
        }
        coeffs.push(det_lu(m) / denominator);
    }
    Jet::new(n, coeffs)
}

/// Determinant by LU factorization with partial pivoting.
#[allow(clippy::needless_range_loop)]
fn det_lu(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&a, &b| {
                math::abs(m[a][col])
                    .partial_cmp(&math::abs(m[b][col]))
                    .expect("finite entries")
            })
            .expect("non-empty range");
        if m[pivot_row][col] == 0.0 {
            return 0.0;
        }
        if pivot_row != col {
            m.swap(pivot_row, col);
            det = -det;
        }
        let pivot = m[col][col];
        det *= pivot;
        for row in col + 1..n {
            let factor = m[row][col] / pivot;
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                let upper = m[col][k];
                m[row][k] -= factor * upper;
            }
        }
    }
    det
}

/// Multiplies two jets through the full dense polynomial product of degree
/// `2n`, then truncates back to degree `n`.
pub fn poly_mul_oracle(x: &Jet, y: &Jet) -> Result<Jet, JetError> {
    if x.order() != y.order() {
        return Err(JetError::OrderMismatch {
            left: x.order(),
            right: y.order(),
        });
    }
    let n = x.order();
    let mut full = vec![0.0; 2 * n + 1];
    for (i, &a) in x.coeffs().iter().enumerate() {
        for (j, &b) in y.coeffs().iter().enumerate() {
            full[i + j] += a * b;
        }
    }
    full.truncate(n + 1);
    Jet::new(n, full)
}

/// Configuration for the finite-difference oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct FDConfig {
    /// Base step; the actual step is `base_step * max(1, |x|)`.
    pub base_step: f64,
    /// Richardson extrapolation levels; 1 means the raw stencil.
    pub levels: usize,
}

impl Default for FDConfig {
    /// `h = 1e-3` (relative) with 3 Richardson levels balances truncation
    /// against round-off for third derivatives in 64-bit floats.
    fn default() -> Self {
        FDConfig {
            base_step: 1e-3,
            levels: 3,
        }
    }
}

/// Errors from the finite-difference oracle.
#[derive(Debug, Clone, PartialEq)]
pub enum FDError {
    /// Stencils are provided for derivative orders 1 through 4 only.
    UnsupportedOrder { order: usize },
    /// `base_step` must be positive and `levels` at least 1.
    BadConfig,
    /// Expression evaluation failed somewhere inside the stencil.
    Eval(EvalError),
}

impl fmt::Display for FDError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FDError::UnsupportedOrder { order } => {
                write!(f, "no finite-difference stencil for derivative order {}", order)
            }
            FDError::BadConfig => write!(f, "step must be positive and levels at least 1"),
            FDError::Eval(e) => write!(f, "{}", e),
        }
    }
}

impl core::error::Error for FDError {}

impl From<EvalError> for FDError {
    fn from(e: EvalError) -> Self {
        FDError::Eval(e)
    }
}

/// Estimates the `order`-th derivative of the expression at `x` by central
/// differences with Richardson extrapolation.
///
/// The central stencils have error expansions in even powers of the step,
/// so each extrapolation level cancels the next `h^2` term. All points the
/// stencil touches must be inside the expression's domain.
pub fn finite_difference(
    f: &Expr,
    x: f64,
    order: usize,
    cfg: &FDConfig,
) -> Result<f64, FDError> {
    if !(1..=4).contains(&order) {
        return Err(FDError::UnsupportedOrder { order });
    }
    if cfg.base_step.is_nan() || cfg.base_step <= 0.0 || cfg.levels < 1 {
        return Err(FDError::BadConfig);
    }
    let h0 = cfg.base_step * math::abs(x).max(1.0);
    // Richardson tableau: column 0 holds stencil values at h, h/2, h/4...;
    // column j cancels the h^(2j) error term.
    let mut tableau: Vec<Vec<f64>> = Vec::with_capacity(cfg.levels);
    for level in 0..cfg.levels {
        let h = h0 / math::powi(2.0, level as i32);
        let mut row = vec![central_stencil(f, x, order, h)?];
        for j in 1..=level {
            let pow4 = math::powi(4.0, j as i32);
            let refined = (pow4 * row[j - 1] - tableau[level - 1][j - 1]) / (pow4 - 1.0);
            row.push(refined);
        }
        tableau.push(row);
    }
    Ok(*tableau[cfg.levels - 1].last().expect("non-empty row"))
}

fn central_stencil(f: &Expr, x: f64, order: usize, h: f64) -> Result<f64, FDError> {
    let at = |p: f64| -> Result<f64, FDError> { Ok(eval_real(f, p)?) };
    let v = match order {
        1 => (at(x + h)? - at(x - h)?) / (2.0 * h),
        2 => (at(x + h)? - 2.0 * at(x)? + at(x - h)?) / (h * h),
        3 => {
            (at(x + 2.0 * h)? - 2.0 * at(x + h)? + 2.0 * at(x - h)? - at(x - 2.0 * h)?)
                / (2.0 * h * h * h)
        }
        4 => {
            (at(x + 2.0 * h)? - 4.0 * at(x + h)? + 6.0 * at(x)? - 4.0 * at(x - h)?
                + at(x - 2.0 * h)?)
                / (h * h * h * h)
        }
        _ => unreachable!("order validated"),
    };
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use approx::assert_relative_eq;

    #[test]
    fn cramer_matches_trivial_cases() {
        assert_eq!(invert_cramer(&Jet::one(3)).unwrap(), Jet::one(3));
        let two = Jet::constant(1, 2.0);
        assert_eq!(invert_cramer(&two).unwrap(), Jet::constant(1, 0.5));
        let geometric = Jet::new(3, [1.0, 1.0, 0.0, 0.0]).unwrap();
        let inv = invert_cramer(&geometric).unwrap();
        for (a, b) in inv.coeffs().iter().zip(&[1.0, -1.0, 1.0, -1.0]) {
            assert_relative_eq!(a, b, epsilon = 1e-14);
        }
    }

    #[test]
    fn cramer_rejects_zero_divisors() {
        assert_eq!(
            invert_cramer(&Jet::epsilon(2, 1)).unwrap_err(),
            JetError::NotInvertible
        );
    }

    #[test]
    fn poly_oracle_examples() {
        let x = Jet::new(2, [1.0, 1.0, 0.0]).unwrap();
        assert_eq!(
            poly_mul_oracle(&x, &x).unwrap(),
            Jet::new(2, [1.0, 2.0, 1.0]).unwrap()
        );
        let e2 = Jet::epsilon(3, 2);
        assert_eq!(poly_mul_oracle(&e2, &e2).unwrap(), Jet::zero(3));
    }

    #[test]
    fn fd_first_derivative_of_exp() {
        let f = parse("exp(x)").unwrap();
        let d = finite_difference(&f, 0.0, 1, &FDConfig::default()).unwrap();
        assert_relative_eq!(d, 1.0, epsilon = 1e-8);
    }

    #[test]
    fn fd_second_derivative_of_square() {
        let f = parse("x^2").unwrap();
        let d = finite_difference(&f, 3.0, 2, &FDConfig::default()).unwrap();
        assert_relative_eq!(d, 2.0, epsilon = 1e-6);
    }

    #[test]
    fn fd_propagates_domain_errors() {
        let f = parse("ln(x)").unwrap();
        // A stencil across 0 hits the domain edge.
        let err = finite_difference(&f, 0.0005, 1, &FDConfig::default());
        assert!(matches!(err, Err(FDError::Eval(_))));
    }

    #[test]
    fn fd_rejects_unsupported_orders() {
        let f = parse("x").unwrap();
        assert!(matches!(
            finite_difference(&f, 0.0, 5, &FDConfig::default()),
            Err(FDError::UnsupportedOrder { order: 5 })
        ));
    }

    #[test]
    fn fd_convergence_follows_stencil_order() {
        // With a single level the centered stencils are O(h^2): halving h
        // should cut the error by about 4.
        let f = parse("exp(x)").unwrap();
        let exact = 1.0f64.exp();
        for order in 1..=3 {
            let coarse = finite_difference(
                &f,
                1.0,
                order,
                &FDConfig {
                    base_step: 0.4,
                    levels: 1,
                },
            )
            .unwrap();
            let fine = finite_difference(
                &f,
                1.0,
                order,
                &FDConfig {
                    base_step: 0.2,
                    levels: 1,
                },
            )
            .unwrap();
            let ratio = (coarse - exact).abs() / (fine - exact).abs();
            assert!(
                (2.5..6.0).contains(&ratio),
                "order {order}: expected ~4x error reduction, got {ratio}"
            );
        }
    }
}
