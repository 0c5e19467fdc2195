//! Higher-order forward-mode automatic differentiation on truncated
//! polynomial algebras.
//!
//! The central type is the [`Jet`]: a truncated polynomial
//! `a0 + a1*e + a2*e^2 + ... + an*e^n` over a nilpotent generator `e` with
//! `e^(n+1) = 0`. Evaluating a function's jet extension once at a seeded
//! point `x + t1*e + ... + tn*e^n` (with `t1 != 0`) propagates enough
//! information to recover the first `n` derivatives of the function at `x`
//! exactly, up to floating-point rounding. The seed coefficients are free
//! parameters; the [`engine`] module builds the lower-triangular transfer
//! matrix a seed induces and inverts it to extract derivatives, so any
//! non-degenerate seed yields the same derivatives.
//!
//! Modules:
//!
//! - [`jet`]: the truncated polynomial algebra (arithmetic, zero-divisor
//!   classification, inversion).
//! - [`taylor`]: derivative sequences of elementary functions and the
//!   lifting map that evaluates a function's jet extension.
//! - [`engine`]: seeding, transfer/extraction matrices, and the end-to-end
//!   `differentiate` entry point.
//! - [`expr`]: a small univariate expression language (parser, real and
//!   jet evaluation).
//! - [`bidual`]: a four-dimensional algebra with two square-zero
//!   generators, used for exact second derivatives.
//! - [`norms`]: norms on the jet algebra, including a weighted Euclidean
//!   norm that is submultiplicative, and a matrix embedding.
//! - [`oracles`]: slow, independent reference implementations (dense
//!   polynomial products, determinant-based inversion, finite differences)
//!   used by tests and the CLI's check mode.
//!
//! # Example
//!
//! ```
//! use jetad::{engine, expr, SeedVector};
//!
//! let f = expr::parse("ln(x)*cos(1/x^2)").unwrap();
//! let seed = SeedVector::standard(3);
//! let result = engine::differentiate(&f, 2.0, 3, &seed).unwrap();
//! assert!((result.value - 2.0f64.ln() * 0.25f64.cos()).abs() < 1e-14);
//! assert_eq!(result.derivatives.len(), 3);
//! ```
//!
//! The crate is `no_std`-compatible (with `alloc`): disable the default
//! `std` feature and enable `libm` to source float math from the `libm`
//! crate.

#![cfg_attr(not(feature = "std"), no_std)]

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("jetad requires either the `std` feature or the `libm` feature");

extern crate alloc;

pub mod bidual;
pub mod engine;
pub mod expr;
pub mod jet;
mod math;
pub mod norms;
pub mod oracles;
pub mod taylor;

pub use bidual::BiDual;
pub use engine::{DerivativeResult, ExtractionMatrix, SeedVector, TransferMatrix};
pub use expr::{Expr, SourceSpan};
pub use jet::{Jet, JetError, ZeroDivisorClass};
pub use norms::HomogeneousNorm;
pub use taylor::{DerivSeq, ElementaryFn};

/// Largest jet order supported by operations that divide by factorials.
///
/// `171!` overflows an `f64`, so derivative/coefficient conversions are
/// rejected beyond this order. Practical jet orders are far smaller.
pub const MAX_ORDER: usize = 170;
