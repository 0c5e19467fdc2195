//! Norms on the jet algebra.
//!
//! A homogeneous norm assigns a length to each homogeneous element
//! `x * e^i` subject to definiteness, absolute homogeneity, the triangle
//! inequality within a degree, and submultiplicativity across degrees. Any
//! such rule extends to the whole algebra in the l1 way (sum over degrees,
//! giving a normed algebra) and in the l2 way (root of sum of squares,
//! giving a norm that is *not* submultiplicative in general: squaring
//! `1 + e` already violates it).
//!
//! The weighted Euclidean norm with degree weights `(n + 1 - i) * beta^i`
//! is submultiplicative, because the weights themselves satisfy
//! `w(i + j) <= w(i) * w(j)`. Equivalently: embedding a jet as a
//! lower-triangular Toeplitz matrix with scale `sqrt(beta)` (an injective
//! algebra homomorphism) turns this norm into the Frobenius norm, which is
//! submultiplicative; each coefficient `x_k` appears in `n + 1 - k` matrix
//! entries of magnitude `x_k * beta^(k/2)`.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::jet::Jet;
use crate::math;

/// A per-degree norm rule on homogeneous elements.
#[derive(Clone)]
pub enum HomogeneousNorm {
    /// `|x * e^i| = |x|` for every degree.
    Absolute,
    /// `|x * e^i| = sqrt((n + 1 - i) * beta^i) * |x|`, where `n` is the
    /// order of the jet being measured.
    Weighted { beta: f64 },
    /// A user-supplied rule, validated at construction.
    Custom(CustomRule),
}

/// A validated user rule: `(degree, coefficient) -> length`.
#[derive(Clone)]
pub struct CustomRule {
    rule: Arc<dyn Fn(usize, f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for HomogeneousNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomogeneousNorm::Absolute => write!(f, "Absolute"),
            HomogeneousNorm::Weighted { beta } => write!(f, "Weighted {{ beta: {} }}", beta),
            HomogeneousNorm::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

/// Errors from norm construction and evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum NormError {
    /// `beta` must be strictly positive.
    NonPositiveBeta { beta: f64 },
    /// A custom rule failed one of the homogeneous-norm axioms.
    RuleViolation {
        axiom: &'static str,
        degree: usize,
    },
}

impl fmt::Display for NormError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormError::NonPositiveBeta { beta } => {
                write!(f, "beta must be positive, got {}", beta)
            }
            NormError::RuleViolation { axiom, degree } => {
                write!(f, "homogeneous norm axiom `{}` fails at degree {}", axiom, degree)
            }
        }
    }
}

impl core::error::Error for NormError {}

impl HomogeneousNorm {
    pub fn absolute() -> Self {
        HomogeneousNorm::Absolute
    }

    /// The weighted rule with degree weights `(n + 1 - i) * beta^i`.
    pub fn weighted(beta: f64) -> Result<Self, NormError> {
        if beta > 0.0 {
            Ok(HomogeneousNorm::Weighted { beta })
        } else {
            Err(NormError::NonPositiveBeta { beta })
        }
    }

    /// Wraps an arbitrary rule after checking the homogeneous-norm axioms
    /// (definiteness, absolute homogeneity, triangle inequality,
    /// submultiplicativity) on pseudo-random samples for all degree pairs
    /// up to `max_order`.
    pub fn custom<F>(rule: F, max_order: usize) -> Result<Self, NormError>
    where
        F: Fn(usize, f64) -> f64 + Send + Sync + 'static,
    {
        validate_rule(&rule, max_order)?;
        Ok(HomogeneousNorm::Custom(CustomRule {
            rule: Arc::new(rule),
        }))
    }

    /// Length of the homogeneous element `coeff * e^degree` inside a jet of
    /// order `jet_order`.
    pub fn eval(&self, degree: usize, coeff: f64, jet_order: usize) -> f64 {
        match self {
            HomogeneousNorm::Absolute => math::abs(coeff),
            HomogeneousNorm::Weighted { beta } => {
                let weight = (jet_order + 1 - degree) as f64 * math::powi(*beta, degree as i32);
                math::sqrt(weight) * math::abs(coeff)
            }
            HomogeneousNorm::Custom(c) => (c.rule)(degree, coeff),
        }
    }
}

fn validate_rule<F>(rule: &F, max_order: usize) -> Result<(), NormError>
where
    F: Fn(usize, f64) -> f64,
{
    let mut rng = SplitMix64::new(0x9e3779b97f4a7c15);
    let sample = |rng: &mut SplitMix64| (rng.next_f64() - 0.5) * 20.0;
    for i in 0..=max_order {
        if rule(i, 0.0) != 0.0 {
            return Err(NormError::RuleViolation {
                axiom: "definiteness",
                degree: i,
            });
        }
        for _ in 0..32 {
            let x = sample(&mut rng);
            let v = rule(i, x);
            if v.is_nan() || v <= 0.0 || !v.is_finite() {
                return Err(NormError::RuleViolation {
                    axiom: "positivity",
                    degree: i,
                });
            }
            let r = sample(&mut rng);
            let homogeneity = rule(i, r * x) - math::abs(r) * v;
            if math::abs(homogeneity) > 1e-9 * (1.0 + math::abs(r) * v) {
                return Err(NormError::RuleViolation {
                    axiom: "homogeneity",
                    degree: i,
                });
            }
            let y = sample(&mut rng);
            if rule(i, x + y) > rule(i, x) + rule(i, y) + 1e-9 {
                return Err(NormError::RuleViolation {
                    axiom: "triangle",
                    degree: i,
                });
            }
        }
    }
    for i in 0..=max_order {
        for j in 0..=(max_order - i) {
            for _ in 0..16 {
                let x = sample(&mut rng);
                let y = sample(&mut rng);
                let lhs = rule(i + j, x * y);
                let rhs = rule(i, x) * rule(j, y);
                if lhs > rhs * (1.0 + 1e-9) + 1e-9 {
                    return Err(NormError::RuleViolation {
                        axiom: "submultiplicativity",
                        degree: i + j,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Sum of homogeneous lengths over all degrees. Always a norm, and
/// submultiplicative for any homogeneous rule.
pub fn norm_l1(x: &Jet, h: &HomogeneousNorm) -> f64 {
    let n = x.order();
    x.coeffs()
        .iter()
        .enumerate()
        .map(|(i, &c)| h.eval(i, c, n))
        .sum()
}

/// Euclidean combination of homogeneous lengths. A norm, but not
/// submultiplicative for rules that give the identity length 1.
pub fn norm_l2_star(x: &Jet, h: &HomogeneousNorm) -> f64 {
    let n = x.order();
    math::sqrt(
        x.coeffs()
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let v = h.eval(i, c, n);
                v * v
            })
            .sum(),
    )
}

/// The weighted Euclidean norm `sqrt(sum_i (n + 1 - i) beta^i x_i^2)`.
///
/// Makes the jet algebra a normed algebra: submultiplicative for every
/// `beta > 0`.
pub fn norm_beta(x: &Jet, beta: f64) -> Result<f64, NormError> {
    if beta <= 0.0 {
        return Err(NormError::NonPositiveBeta { beta });
    }
    let n = x.order();
    let mut acc = 0.0;
    let mut beta_pow = 1.0;
    for (i, &c) in x.coeffs().iter().enumerate() {
        acc += (n + 1 - i) as f64 * beta_pow * c * c;
        beta_pow *= beta;
    }
    Ok(math::sqrt(acc))
}

/// A lower-triangular Toeplitz matrix: entry `(i, j)` is
/// `x_(i-j) * scale^(i-j)` for `i >= j`, zero above the diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerTriangularToeplitz {
    diagonals: Vec<f64>,
}

impl LowerTriangularToeplitz {
    /// Matrix dimension.
    pub fn size(&self) -> usize {
        self.diagonals.len()
    }

    /// Entry at zero-based `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> f64 {
        if row >= col {
            self.diagonals[row - col]
        } else {
            0.0
        }
    }

    /// The constant value along the `k`-th sub-diagonal.
    pub fn diagonal(&self, k: usize) -> f64 {
        self.diagonals[k]
    }

    /// Dense row-major copy.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.size();
        (0..n)
            .map(|i| (0..n).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    /// Root of the sum of squared entries. Each sub-diagonal value appears
    /// `n - k` times.
    pub fn frobenius_norm(&self) -> f64 {
        let n = self.size();
        let mut acc = 0.0;
        for (k, &d) in self.diagonals.iter().enumerate() {
            acc += (n - k) as f64 * d * d;
        }
        math::sqrt(acc)
    }
}

/// Embeds a jet as a lower-triangular Toeplitz matrix with sub-diagonal
/// values `x_k * scale^k`.
///
/// For any fixed positive scale this is an injective algebra homomorphism:
/// it is linear, sends products to matrix products, and only the zero jet
/// maps to the zero matrix. At `scale = sqrt(beta)` the Frobenius norm of
/// the image equals [`norm_beta`] with that `beta`.
pub fn phi_embed(x: &Jet, scale: f64) -> LowerTriangularToeplitz {
    let mut diagonals = Vec::with_capacity(x.order() + 1);
    let mut s = 1.0;
    for &c in x.coeffs() {
        diagonals.push(c * s);
        s *= scale;
    }
    LowerTriangularToeplitz { diagonals }
}

/// Tiny deterministic generator for rule validation; not for statistics.
struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}
