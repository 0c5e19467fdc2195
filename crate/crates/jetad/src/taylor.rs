//! Derivative data of elementary functions and the lifting map.
//!
//! [`taylor_coeffs`] produces the exact derivatives of an elementary
//! function at a point by closed recurrences (no finite differences).
//! [`lift`] turns that data into a jet evaluation: given derivatives of `f`
//! at `x` and a jet `j` with constant term `x`, it returns
//! `sum_k f^(k)(x)/k! * (j - x)^k` evaluated by Horner's scheme over the
//! jet algebra, which is the jet extension of `f` applied to `j`.

use alloc::vec::Vec;
use core::fmt;

use crate::jet::{Jet, JetError};
use crate::math;
use crate::MAX_ORDER;

/// Derivatives of a function at an expansion point:
/// `[f(x), f'(x), ..., f^(n)(x)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivSeq {
    base: f64,
    derivs: Vec<f64>,
}

impl DerivSeq {
    /// Packs an expansion point and the derivative values `f(x)..f^(n)(x)`.
    pub fn new(base: f64, derivs: Vec<f64>) -> Result<Self, TaylorError> {
        if !base.is_finite() {
            return Err(TaylorError::NonFinite { index: 0 });
        }
        if derivs.is_empty() || derivs.len() - 1 > MAX_ORDER {
            return Err(TaylorError::OrderTooLarge {
                order: derivs.len().saturating_sub(1),
            });
        }
        if let Some(index) = derivs.iter().position(|d| !d.is_finite()) {
            return Err(TaylorError::NonFinite { index });
        }
        Ok(DerivSeq { base, derivs })
    }

    /// The expansion point `x`.
    pub fn base(&self) -> f64 {
        self.base
    }

    /// `[f(x), f'(x), ..., f^(n)(x)]`.
    pub fn derivs(&self) -> &[f64] {
        &self.derivs
    }

    /// Highest derivative order carried (`n`).
    pub fn order(&self) -> usize {
        self.derivs.len() - 1
    }
}

/// The univariate elementary functions with built-in derivative rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ElementaryFn {
    /// `1/x`, defined for `x != 0`.
    Recip,
    Exp,
    Sin,
    Cos,
    /// Natural logarithm, defined for `x > 0`.
    Ln,
    Arctan,
    /// `x^k` for integer `k`; defined everywhere for `k >= 0`, and for
    /// `x != 0` otherwise.
    PowInt(i32),
    /// `x^p` for real `p`, defined for `x > 0`.
    PowReal(f64),
}

impl ElementaryFn {
    /// Human-readable name, used in error messages.
    pub fn name(&self) -> &'static str {
        match self {
            ElementaryFn::Recip => "recip",
            ElementaryFn::Exp => "exp",
            ElementaryFn::Sin => "sin",
            ElementaryFn::Cos => "cos",
            ElementaryFn::Ln => "ln",
            ElementaryFn::Arctan => "arctan",
            ElementaryFn::PowInt(_) => "integer power",
            ElementaryFn::PowReal(_) => "real power",
        }
    }

    /// Plain evaluation at a real point, with the same domain checks as the
    /// jet path.
    pub fn eval(&self, x: f64) -> Result<f64, TaylorError> {
        match *self {
            ElementaryFn::Recip => {
                if x == 0.0 {
                    Err(self.domain_error(x))
                } else {
                    Ok(1.0 / x)
                }
            }
            ElementaryFn::Exp => Ok(math::exp(x)),
            ElementaryFn::Sin => Ok(math::sin(x)),
            ElementaryFn::Cos => Ok(math::cos(x)),
            ElementaryFn::Ln => {
                if x > 0.0 {
                    Ok(math::ln(x))
                } else {
                    Err(self.domain_error(x))
                }
            }
            ElementaryFn::Arctan => Ok(math::atan(x)),
            ElementaryFn::PowInt(k) => {
                if k < 0 && x == 0.0 {
                    Err(self.domain_error(x))
                } else {
                    Ok(math::powi(x, k))
                }
            }
            ElementaryFn::PowReal(p) => {
                if x > 0.0 {
                    Ok(math::powf(x, p))
                } else {
                    Err(self.domain_error(x))
                }
            }
        }
    }

    fn domain_error(&self, point: f64) -> TaylorError {
        TaylorError::Domain {
            func: self.name(),
            point,
        }
    }
}

/// Errors from derivative-data construction and lifting.
#[derive(Debug, Clone, PartialEq)]
pub enum TaylorError {
    /// The function is undefined (or not differentiable) at the point.
    Domain { func: &'static str, point: f64 },
    /// Requested order exceeds [`MAX_ORDER`].
    OrderTooLarge { order: usize },
    /// The lifting map is only defined on jets whose constant term equals
    /// the expansion point of the derivative data.
    BaseMismatch { expected: f64, actual: f64 },
    /// Derivative count and jet coefficient count disagree.
    LengthMismatch { derivs: usize, jet_coeffs: usize },
    /// A derivative value is NaN or infinite.
    NonFinite { index: usize },
}

impl fmt::Display for TaylorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TaylorError::Domain { func, point } => {
                write!(f, "{} is undefined at {}", func, point)
            }
            TaylorError::OrderTooLarge { order } => write!(
                f,
                "order {} not supported (factorials overflow beyond {})",
                order, MAX_ORDER
            ),
            TaylorError::BaseMismatch { expected, actual } => write!(
                f,
                "constant-term mismatch: derivative data at {}, jet constant term {}",
                expected, actual
            ),
            TaylorError::LengthMismatch { derivs, jet_coeffs } => write!(
                f,
                "length mismatch: {} derivative values vs {} jet coefficients",
                derivs, jet_coeffs
            ),
            TaylorError::NonFinite { index } => {
                write!(f, "non-finite derivative value at index {}", index)
            }
        }
    }
}

impl core::error::Error for TaylorError {}

/// Exact derivatives of `f` at `x` up to the requested order.
pub fn taylor_coeffs(f: ElementaryFn, x: f64, order: usize) -> Result<DerivSeq, TaylorError> {
    if order > MAX_ORDER {
        return Err(TaylorError::OrderTooLarge { order });
    }
    let mut d = Vec::with_capacity(order + 1);
    match f {
        ElementaryFn::Exp => {
            let e = math::exp(x);
            d.resize(order + 1, e);
        }
        ElementaryFn::Sin => {
            let (s, c) = (math::sin(x), math::cos(x));
            let cycle = [s, c, -s, -c];
            d.extend((0..=order).map(|k| cycle[k % 4]));
        }
        ElementaryFn::Cos => {
            let (s, c) = (math::sin(x), math::cos(x));
            let cycle = [c, -s, -c, s];
            d.extend((0..=order).map(|k| cycle[k % 4]));
        }
        ElementaryFn::Ln => {
            if x <= 0.0 {
                return Err(f.domain_error(x));
            }
            // ln^(k)(x) = (-1)^(k-1) (k-1)! / x^k for k >= 1.
            d.push(math::ln(x));
            let mut term = 1.0 / x;
            for k in 1..=order {
                d.push(term);
                term *= -(k as f64) / x;
            }
        }
        ElementaryFn::Recip => {
            if x == 0.0 {
                return Err(f.domain_error(x));
            }
            // (1/x)^(k) = (-1)^k k! / x^(k+1).
            let mut term = 1.0 / x;
            for k in 0..=order {
                d.push(term);
                term *= -((k + 1) as f64) / x;
            }
        }
        ElementaryFn::Arctan => {
            // arctan^(k)(x) = (k-1)! cos^k(t) sin(k(t + pi/2)), t = arctan x.
            d.push(math::atan(x));
            let t = math::atan(x);
            let c = math::cos(t);
            let mut fact = 1.0;
            let mut ck = 1.0;
            for k in 1..=order {
                ck *= c;
                d.push(fact * ck * math::sin(k as f64 * (t + core::f64::consts::FRAC_PI_2)));
                fact *= k as f64;
            }
        }
        ElementaryFn::PowInt(p) => {
            if p < 0 && x == 0.0 {
                return Err(f.domain_error(x));
            }
            // (x^p)^(k) = p(p-1)...(p-k+1) x^(p-k); the falling factorial
            // hits zero for k > p >= 0, so those terms never touch x^(p-k).
            let mut falling = 1.0;
            for k in 0..=order {
                if falling == 0.0 {
                    d.push(0.0);
                } else {
                    d.push(falling * math::powi(x, p - k as i32));
                }
                falling *= p as f64 - k as f64;
            }
        }
        ElementaryFn::PowReal(p) => {
            if x <= 0.0 {
                return Err(f.domain_error(x));
            }
            let mut falling = 1.0;
            for k in 0..=order {
                if falling == 0.0 {
                    d.push(0.0);
                } else {
                    d.push(falling * math::powf(x, p - k as f64));
                }
                falling *= p - k as f64;
            }
        }
    }
    DerivSeq::new(x, d)
}

/// Evaluates the jet extension encoded by derivative data `d` at the jet
/// `j`.
///
/// Requires `j` to carry as many coefficients as `d` carries derivatives,
/// and `j`'s constant term to equal `d`'s expansion point exactly: the
/// extension of `f` from data at `x` is only defined on jets with constant
/// term `x`. Evaluation runs Horner's scheme on the nilpotent part, costing
/// `n` jet multiplications.
pub fn lift(d: &DerivSeq, j: &Jet) -> Result<Jet, TaylorError> {
    let n = j.order();
    if d.derivs.len() != n + 1 {
        return Err(TaylorError::LengthMismatch {
            derivs: d.derivs.len(),
            jet_coeffs: n + 1,
        });
    }
    if d.base != j.constant_term() {
        return Err(TaylorError::BaseMismatch {
            expected: d.base,
            actual: j.constant_term(),
        });
    }
    let u = j.nilpotent_part();
    // Horner over the jet algebra with coefficients f^(k)(x)/k!.
    let mut acc = Jet::constant(n, d.derivs[n] / math::factorial(n));
    for k in (0..n).rev() {
        let c = Jet::constant(n, d.derivs[k] / math::factorial(k));
        acc = mul_same_order(&acc, &u).add(&c).expect("orders match");
    }
    Ok(acc)
}

/// Applies an elementary function to a jet.
///
/// Equivalent to `lift(taylor_coeffs(f, a0, n), j)` where `a0` is the jet's
/// constant term; reciprocals go through algebra inversion and integer
/// powers through binary exponentiation, which widens the domain to any
/// `a0` for non-negative exponents.
pub fn apply_elementary(f: ElementaryFn, j: &Jet) -> Result<Jet, TaylorError> {
    let a0 = j.constant_term();
    match f {
        ElementaryFn::Recip => j.invert().map_err(|e| match e {
            JetError::NotInvertible => f.domain_error(a0),
            other => unreachable_jet_error(other),
        }),
        ElementaryFn::PowInt(p) => {
            if p >= 0 {
                Ok(pow_jet(j, p as u32))
            } else {
                let inv = j.invert().map_err(|e| match e {
                    JetError::NotInvertible => f.domain_error(a0),
                    other => unreachable_jet_error(other),
                })?;
                Ok(pow_jet(&inv, p.unsigned_abs()))
            }
        }
        ElementaryFn::PowReal(p) => {
            if a0 <= 0.0 {
                return Err(f.domain_error(a0));
            }
            // x^p = exp(p ln x), lifted.
            let ln_j = apply_elementary(ElementaryFn::Ln, j)?;
            apply_elementary(ElementaryFn::Exp, &ln_j.scale(p))
        }
        _ => {
            let data = taylor_coeffs(f, a0, j.order())?;
            lift(&data, j)
        }
    }
}

/// `j^k` by repeated squaring; `j^0` is the identity jet.
fn pow_jet(j: &Jet, k: u32) -> Jet {
    let mut acc = Jet::one(j.order());
    let mut base = j.clone();
    let mut exp = k;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_same_order(&acc, &base);
        }
        base = mul_same_order(&base, &base);
        exp >>= 1;
    }
    acc
}

fn mul_same_order(a: &Jet, b: &Jet) -> Jet {
    a.mul(b).expect("orders match")
}

fn unreachable_jet_error(e: JetError) -> TaylorError {
    // Inversion only ever fails with NotInvertible.
    unreachable!("unexpected jet error during elementary application: {e}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use approx::assert_relative_eq;

    #[test]
    fn exp_coeffs_at_zero() {
        let d = taylor_coeffs(ElementaryFn::Exp, 0.0, 3).unwrap();
        assert_eq!(d.derivs(), &[1.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn ln_coeffs_at_one() {
        let d = taylor_coeffs(ElementaryFn::Ln, 1.0, 3).unwrap();
        assert_eq!(d.derivs(), &[0.0, 1.0, -1.0, 2.0]);
    }

    #[test]
    fn arctan_coeffs_at_zero() {
        // arctan x = x - x^3/3 + ... so derivatives are [0, 1, 0, -2].
        let d = taylor_coeffs(ElementaryFn::Arctan, 0.0, 3).unwrap();
        assert_relative_eq!(d.derivs()[0], 0.0, epsilon = 1e-15);
        assert_relative_eq!(d.derivs()[1], 1.0, epsilon = 1e-14);
        assert_relative_eq!(d.derivs()[2], 0.0, epsilon = 1e-14);
        assert_relative_eq!(d.derivs()[3], -2.0, epsilon = 1e-13);
    }

    #[test]
    fn domain_violations_name_function_and_point() {
        let err = taylor_coeffs(ElementaryFn::Ln, -1.0, 2).unwrap_err();
        assert_eq!(
            err,
            TaylorError::Domain {
                func: "ln",
                point: -1.0
            }
        );
        assert_eq!(alloc::format!("{err}"), "ln is undefined at -1");
        assert!(taylor_coeffs(ElementaryFn::Recip, 0.0, 2).is_err());
        assert!(taylor_coeffs(ElementaryFn::PowReal(0.5), -2.0, 2).is_err());
    }

    #[test]
    fn lift_exp_reproduces_series() {
        // exp data at 0 lifted to the jet e gives 1 + e + e^2/2 + e^3/6.
        let d = taylor_coeffs(ElementaryFn::Exp, 0.0, 3).unwrap();
        let j = Jet::new(3, [0.0, 1.0, 0.0, 0.0]).unwrap();
        let out = lift(&d, &j).unwrap();
        assert_eq!(out.coeffs(), &[1.0, 1.0, 0.5, 1.0 / 6.0]);
    }

    #[test]
    fn lift_ln_reproduces_series() {
        let d = taylor_coeffs(ElementaryFn::Ln, 1.0, 3).unwrap();
        let j = Jet::new(3, [1.0, 1.0, 0.0, 0.0]).unwrap();
        let out = lift(&d, &j).unwrap();
        assert_eq!(out.coeffs(), &[0.0, 1.0, -0.5, 1.0 / 3.0]);
    }

    #[test]
    fn lift_constant_jet_is_function_value() {
        let d = taylor_coeffs(ElementaryFn::Sin, 0.7, 3).unwrap();
        let j = Jet::constant(3, 0.7);
        let out = lift(&d, &j).unwrap();
        assert_eq!(out.coeffs(), &[math::sin(0.7), 0.0, 0.0, 0.0]);
    }

    #[test]
    fn lift_rejects_base_mismatch() {
        let d = taylor_coeffs(ElementaryFn::Exp, 0.0, 3).unwrap();
        let j = Jet::constant(3, 1.0);
        assert!(matches!(
            lift(&d, &j),
            Err(TaylorError::BaseMismatch { .. })
        ));
    }

    #[test]
    fn apply_recip_matches_inversion() {
        let j = Jet::new(3, [1.0, 1.0, 0.0, 0.0]).unwrap();
        let out = apply_elementary(ElementaryFn::Recip, &j).unwrap();
        assert_eq!(out.coeffs(), &[1.0, -1.0, 1.0, -1.0]);
        assert_eq!(out, j.invert().unwrap());
    }

    #[test]
    fn apply_sin_cos_at_unit_seed() {
        let j = Jet::new(3, [0.0, 1.0, 0.0, 0.0]).unwrap();
        let s = apply_elementary(ElementaryFn::Sin, &j).unwrap();
        assert_eq!(s.coeffs(), &[0.0, 1.0, 0.0, -1.0 / 6.0]);
        let c = apply_elementary(ElementaryFn::Cos, &j).unwrap();
        assert_eq!(c.coeffs(), &[1.0, 0.0, -0.5, 0.0]);
    }

    #[test]
    fn pow_int_works_at_zero_constant_term() {
        // x^3 at the pure-nilpotent jet e: e^3.
        let j = Jet::epsilon(3, 1);
        let out = apply_elementary(ElementaryFn::PowInt(3), &j).unwrap();
        assert_eq!(out, Jet::epsilon(3, 3));
        // Negative exponent needs an invertible jet.
        assert!(apply_elementary(ElementaryFn::PowInt(-1), &j).is_err());
    }

    #[test]
    fn pow_real_matches_derivative_data_route() {
        let j = Jet::new(3, [2.0, 0.7, -0.3, 0.1]).unwrap();
        let via_exp_ln = apply_elementary(ElementaryFn::PowReal(1.6), &j).unwrap();
        let data = taylor_coeffs(ElementaryFn::PowReal(1.6), 2.0, 3).unwrap();
        let via_lift = lift(&data, &j).unwrap();
        for (a, b) in via_exp_ln.coeffs().iter().zip(via_lift.coeffs()) {
            assert_relative_eq!(a, b, max_relative = 1e-13);
        }
    }

    #[test]
    fn order_cap_enforced() {
        assert!(matches!(
            taylor_coeffs(ElementaryFn::Exp, 0.0, 171),
            Err(TaylorError::OrderTooLarge { order: 171 })
        ));
        assert!(DerivSeq::new(0.0, vec![0.0; 180]).is_err());
    }
}
