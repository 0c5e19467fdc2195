//! The truncated polynomial algebra of jets.
//!
//! A jet of order `n` is `a0 + a1*e + ... + an*e^n` where the generator `e`
//! satisfies `e^(n+1) = 0`. Addition is coefficient-wise and multiplication
//! is polynomial multiplication with every term of degree above `n`
//! discarded. A jet is invertible exactly when its constant term `a0` is
//! nonzero; otherwise it is a zero-divisor (it kills `e^n`).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// An element of the order-`n` truncated polynomial algebra.
///
/// Stores the `n + 1` coefficients `(a0, ..., an)` densely. The order is a
/// run-time value so a single code path serves every order. Jets are
/// immutable values; all operations are pure functions and jets can be
/// shared or sent between threads freely.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    coeffs: Vec<f64>,
}

/// Invertibility classification of a jet.
///
/// The split is an algebraic dichotomy on the constant term: `a0 == 0`
/// exactly means zero-divisor, anything else is invertible. A near-zero
/// `a0` is invertible but ill-conditioned; callers that care should inspect
/// the magnitude themselves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroDivisorClass {
    Invertible,
    ZeroDivisor,
}

/// Errors from jet construction and arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub enum JetError {
    /// Coefficient count does not equal `order + 1` (length mismatch).
    CoeffCount { order: usize, actual: usize },
    /// A coefficient is NaN or infinite.
    NonFinite { index: usize },
    /// Two operands have different orders. Mixed-order arithmetic is
    /// rejected rather than auto-promoted: silent promotion hides bugs in
    /// seeding code.
    OrderMismatch { left: usize, right: usize },
    /// Inversion was requested for a jet with zero constant term.
    NotInvertible,
}

impl fmt::Display for JetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JetError::CoeffCount { order, actual } => write!(
                f,
                "length mismatch: order {} needs {} coefficients, got {}",
                order,
                order + 1,
                actual
            ),
            JetError::NonFinite { index } => {
                write!(f, "non-finite coefficient at index {}", index)
            }
            JetError::OrderMismatch { left, right } => {
                write!(f, "order mismatch: {} vs {}", left, right)
            }
            JetError::NotInvertible => write!(f, "not invertible: zero constant term"),
        }
    }
}

impl core::error::Error for JetError {}

impl Jet {
    /// Builds a jet of the given order from its coefficient sequence.
    ///
    /// Fails if the sequence does not have exactly `order + 1` entries or
    /// contains a non-finite value.
    pub fn new(order: usize, coeffs: impl Into<Vec<f64>>) -> Result<Self, JetError> {
        let coeffs = coeffs.into();
        if coeffs.len() != order + 1 {
            return Err(JetError::CoeffCount {
                order,
                actual: coeffs.len(),
            });
        }
        if let Some(index) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(JetError::NonFinite { index });
        }
        Ok(Jet { coeffs })
    }

    /// The real number `value` viewed as a jet of the given order.
    pub fn constant(order: usize, value: f64) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = value;
        Jet { coeffs }
    }

    /// The zero jet of the given order.
    pub fn zero(order: usize) -> Self {
        Jet {
            coeffs: vec![0.0; order + 1],
        }
    }

    /// The multiplicative identity of the given order.
    pub fn one(order: usize) -> Self {
        Jet::constant(order, 1.0)
    }

    /// The basis jet `e^degree` of the given order.
    ///
    /// # Panics
    ///
    /// Panics if `degree > order`.
    pub fn epsilon(order: usize, degree: usize) -> Self {
        assert!(degree <= order, "epsilon degree {degree} exceeds order {order}");
        let mut coeffs = vec![0.0; order + 1];
        coeffs[degree] = 1.0;
        Jet { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of `e^i`, or `0` for `i` beyond the order.
    pub fn coeff(&self, i: usize) -> f64 {
        self.coeffs.get(i).copied().unwrap_or(0.0)
    }

    /// The degree-0 coefficient `a0`.
    pub fn constant_term(&self) -> f64 {
        self.coeffs[0]
    }

    /// The jet with its constant term zeroed; `(n + 1)`-st powers of the
    /// result vanish.
    pub fn nilpotent_part(&self) -> Jet {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] = 0.0;
        Jet { coeffs }
    }

    /// Projection onto a lower (or equal) order by dropping coefficients.
    ///
    /// # Panics
    ///
    /// Panics if `order` exceeds the jet's order.
    pub fn truncate(&self, order: usize) -> Jet {
        assert!(order <= self.order());
        Jet {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Coefficient-wise sum. The operands must have equal orders.
    pub fn add(&self, rhs: &Jet) -> Result<Jet, JetError> {
        self.check_order(rhs)?;
        Ok(Jet {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Coefficient-wise difference. The operands must have equal orders.
    pub fn sub(&self, rhs: &Jet) -> Result<Jet, JetError> {
        self.check_order(rhs)?;
        Ok(Jet {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn neg(&self) -> Jet {
        Jet {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, r: f64) -> Jet {
        Jet {
            coeffs: self.coeffs.iter().map(|a| r * a).collect(),
        }
    }

    /// Truncated convolution: `c_k = sum_{i+j=k} a_i b_j` for `k <= n`,
    /// every product with `i + j > n` discarded.
    pub fn mul(&self, rhs: &Jet) -> Result<Jet, JetError> {
        self.check_order(rhs)?;
        let n = self.order();
        let mut coeffs = vec![0.0; n + 1];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let mut acc = 0.0;
            for i in 0..=k {
                acc += self.coeffs[i] * rhs.coeffs[k - i];
            }
            *c = acc;
        }
        Ok(Jet { coeffs })
    }

    /// Zero-divisor dichotomy: determined solely by the constant term,
    /// with an exact `== 0` test.
    pub fn classify(&self) -> ZeroDivisorClass {
        if self.coeffs[0] == 0.0 {
            ZeroDivisorClass::ZeroDivisor
        } else {
            ZeroDivisorClass::Invertible
        }
    }

    /// Multiplicative inverse.
    ///
    /// Solves the lower-triangular Toeplitz system `M x = e1` by forward
    /// substitution in O(n^2): `x0 = 1/a0` and
    /// `x_k = -(a1*x_{k-1} + ... + a_k*x0) / a0`.
    pub fn invert(&self) -> Result<Jet, JetError> {
        if self.classify() == ZeroDivisorClass::ZeroDivisor {
            return Err(JetError::NotInvertible);
        }
        let a0 = self.coeffs[0];
        let n = self.order();
        let mut inv = vec![0.0; n + 1];
        inv[0] = 1.0 / a0;
        for k in 1..=n {
            let mut acc = 0.0;
            for i in 1..=k {
                acc += self.coeffs[i] * inv[k - i];
            }
            inv[k] = -acc / a0;
        }
        Ok(Jet { coeffs: inv })
    }

    fn check_order(&self, rhs: &Jet) -> Result<(), JetError> {
        if self.order() == rhs.order() {
            Ok(())
        } else {
            Err(JetError::OrderMismatch {
                left: self.order(),
                right: rhs.order(),
            })
        }
    }
}

impl fmt::Display for Jet {
    /// Renders e.g. `2 - 1e + 0.5e^3`, skipping zero terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.iter().all(|&c| c == 0.0) {
            return write!(f, "0");
        }
        let mut printed = false;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            if printed {
                write!(f, " {} {}", if c < 0.0 { "-" } else { "+" }, c.abs())?;
            } else {
                write!(f, "{}", c)?;
                printed = true;
            }
            match i {
                0 => {}
                1 => write!(f, "e")?,
                _ => write!(f, "e^{}", i)?,
            }
        }
        Ok(())
    }
}
