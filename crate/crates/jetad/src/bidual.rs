//! A four-dimensional algebra with two square-zero generators, and exact
//! second derivatives through it.
//!
//! Elements have the form `c0 + c1*e1 + c2*e2 + c12*e1*e2` with
//! `e1^2 = e2^2 = 0` and `e1*e2 = e2*e1`. Evaluating a function at
//! `x + e1 + e2` propagates first- and second-order information through
//! the two independent nilpotents: the `e1` and `e2` coefficients of the
//! result both carry `f'(x)` and the `e1*e2` coefficient carries `f''(x)`
//! exactly.
//!
//! Elementary functions lift by the rule `f(c0 + u) = f(c0) + f'(c0)*u +
//! f''(c0)/2 * u^2` where `u` is the nilpotent part (`u^3 = 0`), the
//! degree-2 counterpart of the jet lifting map.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::expr::{EvalError, EvalErrorKind, Expr, ExprKind, SourceSpan};
use crate::taylor::{taylor_coeffs, ElementaryFn, TaylorError};

/// An element `c0 + c1*e1 + c2*e2 + c12*e1*e2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiDual {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub c12: f64,
}

impl BiDual {
    pub fn new(c0: f64, c1: f64, c2: f64, c12: f64) -> Self {
        BiDual { c0, c1, c2, c12 }
    }

    /// A real number embedded with zero nilpotent part.
    pub fn from_real(c0: f64) -> Self {
        BiDual::new(c0, 0.0, 0.0, 0.0)
    }

    /// The evaluation seed `x + e1 + e2`.
    pub fn seed(x: f64) -> Self {
        BiDual::new(x, 1.0, 1.0, 0.0)
    }

    pub fn scale(self, r: f64) -> Self {
        BiDual::new(r * self.c0, r * self.c1, r * self.c2, r * self.c12)
    }

    /// The nilpotent part (degree-0 component removed).
    pub fn nilpotent_part(self) -> Self {
        BiDual::new(0.0, self.c1, self.c2, self.c12)
    }
}

impl Add for BiDual {
    type Output = BiDual;
    fn add(self, rhs: BiDual) -> BiDual {
        BiDual::new(
            self.c0 + rhs.c0,
            self.c1 + rhs.c1,
            self.c2 + rhs.c2,
            self.c12 + rhs.c12,
        )
    }
}

impl Sub for BiDual {
    type Output = BiDual;
    fn sub(self, rhs: BiDual) -> BiDual {
        BiDual::new(
            self.c0 - rhs.c0,
            self.c1 - rhs.c1,
            self.c2 - rhs.c2,
            self.c12 - rhs.c12,
        )
    }
}

impl Neg for BiDual {
    type Output = BiDual;
    fn neg(self) -> BiDual {
        BiDual::new(-self.c0, -self.c1, -self.c2, -self.c12)
    }
}

impl Mul for BiDual {
    type Output = BiDual;
    /// Multiplication table: `e1^2 = e2^2 = 0`, `e1*e2 = e2*e1`, and
    /// anything of total degree above `e1*e2` vanishes.
    fn mul(self, rhs: BiDual) -> BiDual {
        BiDual::new(
            self.c0 * rhs.c0,
            self.c0 * rhs.c1 + self.c1 * rhs.c0,
            self.c0 * rhs.c2 + self.c2 * rhs.c0,
            self.c0 * rhs.c12 + self.c12 * rhs.c0 + self.c1 * rhs.c2 + self.c2 * rhs.c1,
        )
    }
}

impl fmt::Display for BiDual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}e1 + {}e2 + {}e1e2",
            self.c0, self.c1, self.c2, self.c12
        )
    }
}

fn taylor_to_eval(e: TaylorError, span: SourceSpan) -> EvalError {
    let kind = match e {
        TaylorError::Domain { func, point } => EvalErrorKind::Domain { func, point },
        TaylorError::OrderTooLarge { order } => EvalErrorKind::OrderTooLarge { order },
        TaylorError::NonFinite { .. } => EvalErrorKind::NonFinite,
        TaylorError::BaseMismatch { .. } | TaylorError::LengthMismatch { .. } => {
            unreachable!("bidual lifting builds data at the element's own base: {e}")
        }
    };
    EvalError { kind, span }
}

/// Applies an elementary function by the degree-2 lifting rule.
fn lift_elementary(f: ElementaryFn, b: BiDual, span: SourceSpan) -> Result<BiDual, EvalError> {
    let data = taylor_coeffs(f, b.c0, 2).map_err(|e| taylor_to_eval(e, span))?;
    let d = data.derivs();
    let u = b.nilpotent_part();
    Ok(BiDual::from_real(d[0]) + u.scale(d[1]) + (u * u).scale(d[2] / 2.0))
}

/// Evaluates an expression over the bidual algebra.
pub fn eval(e: &Expr, at: BiDual) -> Result<BiDual, EvalError> {
    match e.kind() {
        ExprKind::Const(c) => Ok(BiDual::from_real(*c)),
        ExprKind::Var => Ok(at),
        ExprKind::Neg(inner) => Ok(-eval(inner, at)?),
        ExprKind::Add(a, b) => Ok(eval(a, at)? + eval(b, at)?),
        ExprKind::Sub(a, b) => Ok(eval(a, at)? - eval(b, at)?),
        ExprKind::Mul(a, b) => Ok(eval(a, at)? * eval(b, at)?),
        ExprKind::Div(a, b) => {
            let num = eval(a, at)?;
            let den = eval(b, at)?;
            if den.c0 == 0.0 {
                return Err(EvalError {
                    kind: EvalErrorKind::ZeroDivisorDivision,
                    span: e.span(),
                });
            }
            Ok(num * lift_elementary(ElementaryFn::Recip, den, e.span())?)
        }
        ExprKind::Pow(base, exponent) => {
            let b = eval(base, at)?;
            let f = match *exponent {
                crate::expr::Exponent::Int(k) => ElementaryFn::PowInt(k),
                crate::expr::Exponent::Real(p) => ElementaryFn::PowReal(p),
            };
            lift_elementary(f, b, e.span())
        }
        ExprKind::Call(f, arg) => {
            let a = eval(arg, at)?;
            lift_elementary(*f, a, e.span())
        }
    }
}

/// Exact second derivative via one bidual evaluation at `x + e1 + e2`.
///
/// The `e1*e2` coefficient of `f(x + e1 + e2)` is `f''(x)`.
pub fn second_derivative(f: &Expr, x: f64) -> Result<f64, EvalError> {
    Ok(eval(f, BiDual::seed(x))?.c12)
}
