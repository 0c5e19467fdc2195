//! Seeding, derivative extraction, and the end-to-end differentiation
//! routine.
//!
//! A seed vector `(t1, ..., tn)` with `t1 != 0` embeds a point `x` as the
//! jet `x + t1*e + ... + tn*e^n`. Evaluating a function's jet extension at
//! that embedding produces coefficients `(y1, ..., yn)` that are a
//! lower-triangular linear image of the derivatives `(f'(x), ..., f^(n)(x))`:
//! row `k` of the transfer matrix is `[e^k] (t1*e + ... + tn*e^n)^m / m!`
//! over columns `m`. Its inverse recovers the derivatives, one linear
//! functional per derivative order, independent of the seed chosen.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::expr::{eval_jet, EvalError, Expr};
use crate::jet::Jet;
use crate::MAX_ORDER;

/// Seed coefficients `(t1, ..., tn)`; the leading coefficient must be
/// nonzero or no derivative information survives the embedding.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedVector {
    thetas: Vec<f64>,
}

/// Errors from seed construction.
#[derive(Debug, Clone, PartialEq)]
pub enum SeedError {
    /// The leading coefficient is zero.
    DegenerateSeed,
    /// No coefficients were supplied.
    Empty,
    /// A coefficient is NaN or infinite.
    NonFinite { index: usize },
    /// Seed length exceeds [`MAX_ORDER`].
    OrderTooLarge { order: usize },
}

impl fmt::Display for SeedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeedError::DegenerateSeed => write!(f, "degenerate seed: leading coefficient is 0"),
            SeedError::Empty => write!(f, "empty seed"),
            SeedError::NonFinite { index } => {
                write!(f, "non-finite seed coefficient at index {}", index)
            }
            SeedError::OrderTooLarge { order } => write!(
                f,
                "seed order {} not supported (maximum {})",
                order, MAX_ORDER
            ),
        }
    }
}

impl core::error::Error for SeedError {}

impl SeedVector {
    /// Wraps `(t1, ..., tn)`, rejecting `t1 == 0`.
    pub fn new(thetas: Vec<f64>) -> Result<Self, SeedError> {
        if thetas.is_empty() {
            return Err(SeedError::Empty);
        }
        if thetas.len() > MAX_ORDER {
            return Err(SeedError::OrderTooLarge {
                order: thetas.len(),
            });
        }
        if let Some(index) = thetas.iter().position(|t| !t.is_finite()) {
            return Err(SeedError::NonFinite { index });
        }
        if thetas[0] == 0.0 {
            return Err(SeedError::DegenerateSeed);
        }
        Ok(SeedVector { thetas })
    }

    /// The conventional seed `(1, 0, ..., 0)`: best conditioned, and the
    /// extraction matrix reduces to the diagonal `k!`.
    ///
    /// # Panics
    ///
    /// Panics if `order` is zero or exceeds [`MAX_ORDER`].
    pub fn standard(order: usize) -> Self {
        assert!((1..=MAX_ORDER).contains(&order));
        let mut thetas = vec![0.0; order];
        thetas[0] = 1.0;
        SeedVector { thetas }
    }

    /// Number of derivative orders this seed addresses (`n`).
    pub fn order(&self) -> usize {
        self.thetas.len()
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    /// The leading coefficient `t1`.
    pub fn leading(&self) -> f64 {
        self.thetas[0]
    }
}

/// Lower-triangular map from derivatives `(f', ..., f^(n))` to the jet
/// coefficients `(y1, ..., yn)` produced by a seeded evaluation.
///
/// Entry `(k, m)` (one-based) is `[e^k] (t1*e + ... + tn*e^n)^m / m!`; the
/// diagonal is `t1^k / k!`, nonzero whenever the seed is valid.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferMatrix {
    rows: Vec<Vec<f64>>,
}

/// Inverse of the transfer matrix; row `i` is the linear functional that
/// recovers `f^(i)(x)` from `(y1, ..., yn)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtractionMatrix {
    rows: Vec<Vec<f64>>,
}

impl TransferMatrix {
    /// Matrix dimension `n`.
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Entry at one-based `(row, col)`; zero above the diagonal.
    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.rows[row - 1][col - 1]
    }

    /// Row-major dense entries, one `Vec` per row.
    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }
}

impl ExtractionMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Entry at one-based `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.rows[row - 1][col - 1]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// Applies the derivative functionals to the nilpotent coefficients
    /// `(y1, ..., yn)` of an evaluated jet, yielding
    /// `(f'(x), ..., f^(n)(x))`.
    ///
    /// # Panics
    ///
    /// Panics if `ys.len()` differs from the matrix size.
    pub fn apply(&self, ys: &[f64]) -> Vec<f64> {
        assert_eq!(ys.len(), self.size(), "coefficient count mismatch");
        self.rows
            .iter()
            .map(|row| row.iter().zip(ys).map(|(g, y)| g * y).sum())
            .collect()
    }
}

/// Embeds `x` as the jet `x + t1*e + ... + tn*e^n` of order `n`.
///
/// # Panics
///
/// Panics if `x` is NaN or infinite.
pub fn seed(x: f64, theta: &SeedVector) -> Jet {
    let n = theta.order();
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(x);
    coeffs.extend_from_slice(theta.thetas());
    Jet::new(n, coeffs).expect("seed coefficients are finite")
}

/// Builds the transfer matrix of a seed by iterated truncated
/// multiplication of the nilpotent seed polynomial.
pub fn transfer_matrix(theta: &SeedVector) -> TransferMatrix {
    let n = theta.order();
    let nilpotent = seed(0.0, theta);
    let mut rows = vec![vec![0.0; n]; n];
    let mut power = Jet::one(n);
    let mut fact = 1.0;
    for m in 1..=n {
        power = power.mul(&nilpotent).expect("orders match");
        fact *= m as f64;
        for k in m..=n {
            rows[k - 1][m - 1] = power.coeff(k) / fact;
        }
    }
    TransferMatrix { rows }
}

/// Inverts the transfer matrix by forward substitution, column by column.
///
/// The diagonal `t1^k / k!` is nonzero for any valid seed, so the inverse
/// always exists.
#[allow(clippy::needless_range_loop)]
pub fn extraction_matrix(theta: &SeedVector) -> ExtractionMatrix {
    let t = transfer_matrix(theta);
    let n = t.size();
    let mut g = vec![vec![0.0; n]; n];
    // Solve T * g_col = unit column; both T and its inverse are lower
    // triangular.
    for col in 0..n {
        for row in col..n {
            let rhs = if row == col { 1.0 } else { 0.0 };
            let mut acc = rhs;
            for k in col..row {
                acc -= t.rows[row][k] * g[k][col];
            }
            g[row][col] = acc / t.rows[row][row];
        }
    }
    ExtractionMatrix { rows: g }
}

/// Value and derivatives returned by [`differentiate`].
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeResult {
    /// `f(c)`.
    pub value: f64,
    /// `(f'(c), ..., f^(n)(c))`.
    pub derivatives: Vec<f64>,
}

/// Errors from [`differentiate`].
#[derive(Debug, Clone, PartialEq)]
pub enum EngineError {
    /// The requested order and the seed's order disagree.
    OrderMismatch { order: usize, seed_order: usize },
    /// The point to differentiate at is NaN or infinite.
    NonFinitePoint,
    /// Evaluation of the expression failed.
    Eval(EvalError),
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::OrderMismatch { order, seed_order } => write!(
                f,
                "requested order {} but seed has {} coefficients",
                order, seed_order
            ),
            EngineError::NonFinitePoint => write!(f, "point must be finite"),
            EngineError::Eval(e) => write!(f, "{}", e),
        }
    }
}

impl core::error::Error for EngineError {}

impl From<EvalError> for EngineError {
    fn from(e: EvalError) -> Self {
        EngineError::Eval(e)
    }
}

/// Computes `(f(c), f'(c), ..., f^(n)(c))` from a single jet evaluation.
///
/// The expression's jet extension is evaluated once at the seeded point,
/// then the extraction rows are applied to the nilpotent coefficients. The
/// result is independent of the seed up to floating-point error.
pub fn differentiate(
    f: &Expr,
    c: f64,
    order: usize,
    theta: &SeedVector,
) -> Result<DerivativeResult, EngineError> {
    if order != theta.order() {
        return Err(EngineError::OrderMismatch {
            order,
            seed_order: theta.order(),
        });
    }
    if !c.is_finite() {
        return Err(EngineError::NonFinitePoint);
    }
    let y = eval_jet(f, &seed(c, theta))?;
    let extraction = extraction_matrix(theta);
    let derivatives = extraction.apply(&y.coeffs()[1..]);
    Ok(DerivativeResult {
        value: y.constant_term(),
        derivatives,
    })
}
